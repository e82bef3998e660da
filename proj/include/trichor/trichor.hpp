#pragma once

#include "trichor/bounds.hpp"
#include "trichor/charging.hpp"
#include "trichor/enumerate.hpp"
#include "trichor/errors.hpp"
#include "trichor/geom.hpp"
#include "trichor/numeric.hpp"
#include "trichor/polygon.hpp"
#include "trichor/report.hpp"
#include "trichor/triangulation.hpp"
