#pragma once

// Umbrella header for the heatclust library: topological clustering of point
// clouds via the eigenvalue-1 eigenspace of a graph heat operator, with the
// bandwidth chosen by Hilbert-Schmidt cross-validation and an elbow rule.

#include "heatclust/bandwidth.hpp"
#include "heatclust/csv.hpp"
#include "heatclust/datasets.hpp"
#include "heatclust/errors.hpp"
#include "heatclust/heat.hpp"
#include "heatclust/kernel.hpp"
#include "heatclust/laplacian.hpp"
#include "heatclust/matrix_exp.hpp"
#include "heatclust/point_cloud.hpp"
#include "heatclust/report.hpp"
#include "heatclust/rng.hpp"
#include "heatclust/spectral.hpp"
#include "heatclust/svg.hpp"
#include "heatclust/union_find.hpp"
