#pragma once

// Structured residual records for verified identities, serialized as JSON
// lines.

#include <string>
#include <vector>

#include "json.hpp"

#include "conelag/core.hpp"

namespace conelag {

enum class CheckStatus { Pass, Fail, SkippedDegenerate };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    default: return "skipped";
  }
}

struct IdentityReport {
  std::string identity;
  nlohmann::ordered_json point;  // sample descriptor
  Complex lhs = 0.0;
  Complex rhs = 0.0;
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  CheckStatus status = CheckStatus::Pass;
  std::string note;

  /// `scale_hint` guards identities whose two sides are both legitimately
  /// near zero: the residual is taken relative to the natural size of the
  /// terms involved, not to the cancellation remainder.
  static IdentityReport make(std::string identity, nlohmann::ordered_json point,
                             Complex lhs, Complex rhs, double tol,
                             double scale_hint = 0.0) {
    IdentityReport r;
    r.identity = std::move(identity);
    r.point = std::move(point);
    r.lhs = lhs;
    r.rhs = rhs;
    r.abs_residual = std::abs(lhs - rhs);
    double scale = std::max({std::abs(lhs), std::abs(rhs), scale_hint, 1e-30});
    r.rel_residual = r.abs_residual / scale;
    r.status = r.rel_residual <= tol ? CheckStatus::Pass : CheckStatus::Fail;
    return r;
  }

  static IdentityReport skipped(std::string identity, nlohmann::ordered_json point,
                                std::string why) {
    IdentityReport r;
    r.identity = std::move(identity);
    r.point = std::move(point);
    r.status = CheckStatus::SkippedDegenerate;
    r.note = std::move(why);
    return r;
  }

  bool passed() const { return status != CheckStatus::Fail; }

  nlohmann::ordered_json to_json() const {
    auto num = [](Complex v) -> nlohmann::ordered_json {
      if (v.imag() == 0.0) return v.real();
      return {{"re", v.real()}, {"im", v.imag()}};
    };
    nlohmann::ordered_json j;
    j["identity"] = identity;
    j["point"] = point;
    j["lhs"] = num(lhs);
    j["rhs"] = num(rhs);
    j["rel_residual"] = rel_residual;
    j["status"] = to_string(status);
    if (!note.empty()) j["note"] = note;
    return j;
  }
};

struct ReportSummary {
  int pass = 0, fail = 0, skipped = 0;
  void add(const IdentityReport& r) {
    switch (r.status) {
      case CheckStatus::Pass: ++pass; break;
      case CheckStatus::Fail: ++fail; break;
      case CheckStatus::SkippedDegenerate: ++skipped; break;
    }
  }
  bool ok() const { return fail == 0; }
};

inline ReportSummary summarize(const std::vector<IdentityReport>& rs) {
  ReportSummary s;
  for (const auto& r : rs) s.add(r);
  return s;
}

}  // namespace conelag
