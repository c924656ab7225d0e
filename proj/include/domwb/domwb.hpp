#pragma once

#include "domwb/budget.hpp"
#include "domwb/dyadic.hpp"
#include "domwb/error.hpp"
#include "domwb/exponential.hpp"
#include "domwb/finposet.hpp"
#include "domwb/ideal.hpp"
#include "domwb/lambda.hpp"
#include "domwb/lifting.hpp"
#include "domwb/poset_io.hpp"
#include "domwb/powerset.hpp"
#include "domwb/tower.hpp"
