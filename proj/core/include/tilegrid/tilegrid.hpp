#pragma once

#include "tilegrid/batch.hpp"
#include "tilegrid/geom.hpp"
#include "tilegrid/grid.hpp"
#include "tilegrid/index.hpp"
#include "tilegrid/io.hpp"
#include "tilegrid/join.hpp"
#include "tilegrid/knn.hpp"
#include "tilegrid/query.hpp"
#include "tilegrid/refine.hpp"
#include "tilegrid/stats.hpp"
#include "tilegrid/workload.hpp"
