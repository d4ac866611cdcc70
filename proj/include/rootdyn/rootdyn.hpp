#pragma once

#include "rootdyn/error.hpp"
#include "rootdyn/export.hpp"
#include "rootdyn/extended_complex.hpp"
#include "rootdyn/fixed_points.hpp"
#include "rootdyn/image_io.hpp"
#include "rootdyn/operators.hpp"
#include "rootdyn/orbit.hpp"
#include "rootdyn/parallel.hpp"
#include "rootdyn/plane.hpp"
#include "rootdyn/polynomial.hpp"
#include "rootdyn/report.hpp"
#include "rootdyn/stability.hpp"
#include "rootdyn/verify.hpp"
