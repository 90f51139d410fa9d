#pragma once

#include "robbins/core.hpp"
#include "robbins/dp_oracle.hpp"
#include "robbins/envelope.hpp"
#include "robbins/exact_policy.hpp"
#include "robbins/memoryless.hpp"
#include "robbins/montecarlo.hpp"
#include "robbins/no_info.hpp"
#include "robbins/quadrature.hpp"
#include "robbins/registry.hpp"
#include "robbins/verify.hpp"
