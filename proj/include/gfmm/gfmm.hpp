#pragma once

#include "gfmm/entropy.hpp"
#include "gfmm/errors.hpp"
#include "gfmm/evaluation.hpp"
#include "gfmm/hyperbox.hpp"
#include "gfmm/io.hpp"
#include "gfmm/learner.hpp"
#include "gfmm/membership.hpp"
#include "gfmm/metrics.hpp"
#include "gfmm/model.hpp"
#include "gfmm/overlap.hpp"
#include "gfmm/params.hpp"
#include "gfmm/pattern.hpp"
#include "gfmm/predictor.hpp"
#include "gfmm/schema.hpp"
#include "gfmm/splits.hpp"
#include "gfmm/stats.hpp"
