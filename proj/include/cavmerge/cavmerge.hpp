#pragma once

// Umbrella header for the whole library.

#include "cavmerge/adjacency.hpp"
#include "cavmerge/benchmark.hpp"
#include "cavmerge/data.hpp"
#include "cavmerge/datasets.hpp"
#include "cavmerge/evaluation.hpp"
#include "cavmerge/geometry.hpp"
#include "cavmerge/kmeans.hpp"
#include "cavmerge/merging.hpp"
#include "cavmerge/model_select.hpp"
#include "cavmerge/parallel.hpp"
#include "cavmerge/pipeline.hpp"
#include "cavmerge/rng.hpp"
#include "cavmerge/scoring.hpp"
#include "cavmerge/svg.hpp"
