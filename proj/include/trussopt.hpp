#pragma once

// Umbrella header.

#include "trussopt/errors.hpp"
#include "trussopt/vec3.hpp"
#include "trussopt/rng.hpp"
#include "trussopt/model.hpp"
#include "trussopt/search_domain.hpp"
#include "trussopt/optimizers/minimize.hpp"
#include "trussopt/arc_length.hpp"
#include "trussopt/run.hpp"
#include "trussopt/domain.hpp"
#include "trussopt/hypersphere.hpp"
#include "trussopt/path_analysis.hpp"
#include "trussopt/benchmarks.hpp"
#include "trussopt/io/model_file.hpp"
#include "trussopt/io/run_config.hpp"
#include "trussopt/io/results_csv.hpp"
#include "trussopt/io/svg.hpp"
#include "trussopt/io/analysis.hpp"
