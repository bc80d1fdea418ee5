#pragma once

#include "mushybench/error.hpp"
#include "mushybench/material.hpp"
#include "mushybench/material_json.hpp"
#include "mushybench/linearization.hpp"
#include "mushybench/similarity.hpp"
#include "mushybench/tridiagonal.hpp"
#include "mushybench/fdm.hpp"
#include "mushybench/harness.hpp"
#include "mushybench/csv.hpp"
#include "mushybench/output.hpp"
