#pragma once

#include "matchbound/bounds.hpp"
#include "matchbound/error.hpp"
#include "matchbound/geom.hpp"
#include "matchbound/insertion.hpp"
#include "matchbound/matching.hpp"
#include "matchbound/parallel.hpp"
#include "matchbound/report.hpp"
#include "matchbound/svg.hpp"
#include "matchbound/trapezoid.hpp"
#include "matchbound/verifier.hpp"
