#pragma once

#include "stirling/numerics.hpp"
#include "stirling/permutation.hpp"
#include "stirling/enumerate.hpp"
#include "stirling/random.hpp"
#include "stirling/sampler.hpp"
#include "stirling/triangle.hpp"
#include "stirling/sturm.hpp"
#include "stirling/real_roots.hpp"
#include "stirling/distribution.hpp"
