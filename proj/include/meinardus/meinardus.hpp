#pragma once

#include "meinardus/analytic.hpp"
#include "meinardus/errors.hpp"
#include "meinardus/limit_law.hpp"
#include "meinardus/model_io.hpp"
#include "meinardus/sampler.hpp"
#include "meinardus/saddle.hpp"
#include "meinardus/series.hpp"
#include "meinardus/special_functions.hpp"
#include "meinardus/version.hpp"
#include "meinardus/weights.hpp"
