// sodist.hpp -- umbrella header

#pragma once

#include "binary_matrix.hpp"
#include "bounds.hpp"
#include "multiplicity.hpp"
#include "search.hpp"
#include "simplex.hpp"
#include "table.hpp"
#include "witness.hpp"
