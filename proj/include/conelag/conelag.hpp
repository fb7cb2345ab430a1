#pragma once

// Umbrella header.

#include "conelag/core.hpp"
#include "conelag/partition.hpp"
#include "conelag/gammafn.hpp"
#include "conelag/jack.hpp"
#include "conelag/jordan.hpp"
#include "conelag/report.hpp"
#include "conelag/spherical.hpp"
#include "conelag/quadrature.hpp"
#include "conelag/diffops.hpp"
#include "conelag/laguerre.hpp"
#include "conelag/meixner.hpp"
#include "conelag/transforms.hpp"
