#pragma once

#include "core_dist.hpp"
#include "diagnostics.hpp"
#include "errors.hpp"
#include "log_prob.hpp"
#include "model.hpp"
#include "numeric.hpp"
#include "oracle.hpp"
#include "sampler.hpp"
#include "sequences.hpp"
