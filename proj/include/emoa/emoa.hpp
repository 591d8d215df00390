#pragma once

#include "emoa/dominance.hpp"
#include "emoa/harness.hpp"
#include "emoa/individual.hpp"
#include "emoa/metrics.hpp"
#include "emoa/nsga2.hpp"
#include "emoa/problem.hpp"
#include "emoa/problems.hpp"
#include "emoa/variation.hpp"
