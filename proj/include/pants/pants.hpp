#pragma once

#include "pants/errors.hpp"
#include "pants/experiment.hpp"
#include "pants/geometry.hpp"
#include "pants/matrix.hpp"
#include "pants/moduli.hpp"
#include "pants/report.hpp"
#include "pants/rng.hpp"
#include "pants/stats.hpp"
#include "pants/words.hpp"
