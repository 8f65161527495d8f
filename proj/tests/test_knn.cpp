#include <random>
#include <unordered_set>

#include "doctest.h"
#include "support/oracles.hpp"
#include "tilegrid/knn.hpp"
#include "tilegrid/workload.hpp"

using namespace tilegrid;
using namespace tilegrid::testing;

namespace {
const GridConfig g12{12, 12, Mbr{0.0, 0.0, 1.0, 1.0}};
}

TEST_CASE("plan: the distance bound dominates the true k-th distance") {
  std::vector<ObjectRecord> recs = gen_clustered_mbrs(3000, 10, 0.08, 0.015, 111);
  GridIndex idx = GridIndex::build(g12, Variant::two_level, recs);
  std::mt19937_64 rng(113);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int i = 0; i < 60; ++i) {
    Point q{uni(rng), uni(rng)};
    uint32_t k = 1 + static_cast<uint32_t>(uni(rng) * 64);
    KnnPlan plan = knn_plan(idx, q, k);
    std::vector<double> true_d = brute_knn_dists(recs, q, k);
    REQUIRE(plan.bound_d >= true_d.back());
    // candidate cells must include every object that can make the answer
    std::unordered_set<uint32_t> cand_ids;
    for (TileId t : plan.candidate_cells)
      for (const std::vector<Entry>& cls : idx.bucket(t).by_class)
        for (const Entry& e : cls) cand_ids.insert(e.id);
    size_t within = 0;
    for (const ObjectRecord& r : recs)
      if (min_dist(q, r.mbr) <= true_d.back()) {
        ++within;
        REQUIRE(cand_ids.count(r.id) == 1);
      }
    CHECK(within >= k);
    // core cells jointly hold at least k distinct objects
    std::unordered_set<uint32_t> core_ids;
    for (TileId t : plan.core_cells)
      for (const std::vector<Entry>& cls : idx.bucket(t).by_class)
        for (const Entry& e : cls) core_ids.insert(e.id);
    CHECK(core_ids.size() >= k);
  }
}

TEST_CASE("query distances equal the brute-force multiset") {
  std::vector<ObjectRecord> recs = gen_uniform_mbrs(4000, 0.01, 115);
  std::mt19937_64 rng(117);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (Variant v :
       {Variant::one_level, Variant::two_level, Variant::two_level_plus}) {
    CAPTURE(static_cast<int>(v));
    GridIndex idx = GridIndex::build(g12, v, recs);
    for (uint32_t k : {1u, 10u, 100u}) {
      for (int i = 0; i < 25; ++i) {
        Point q{uni(rng), uni(rng)};
        std::vector<KnnNeighbor> got = knn_query(idx, q, k);
        std::vector<double> want = brute_knn_dists(recs, q, k);
        REQUIRE(got.size() == want.size());
        for (size_t j = 0; j < want.size(); ++j) {
          REQUIRE(got[j].distance == want[j]);
          // reported distances must belong to the reported objects
          REQUIRE(min_dist(q, idx.object(got[j].id).mbr) == got[j].distance);
        }
        REQUIRE(unique_ids([&] {
          std::vector<uint32_t> ids;
          for (const KnnNeighbor& n : got) ids.push_back(n.id);
          return ids;
        }()));
      }
    }
  }
}

TEST_CASE("counting replicated entries as objects would break the bound") {
  // the class-A alternative counts each object once by construction; check
  // that both counting modes end with identical answers
  std::vector<ObjectRecord> recs = gen_uniform_mbrs(2500, 0.06, 119);  // fat boxes
  GridIndex idx = GridIndex::build(g12, Variant::two_level, recs);
  std::mt19937_64 rng(121);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    Point q{uni(rng), uni(rng)};
    uint32_t k = 1 + static_cast<uint32_t>(uni(rng) * 40);
    std::vector<KnnNeighbor> a = knn_query(idx, q, k, KnnCountMode::distinct_ids);
    std::vector<KnnNeighbor> b = knn_query(idx, q, k, KnnCountMode::class_a);
    std::vector<double> want = brute_knn_dists(recs, q, k);
    REQUIRE(a.size() == want.size());
    REQUIRE(b.size() == want.size());
    for (size_t j = 0; j < want.size(); ++j) {
      REQUIRE(a[j].distance == want[j]);
      REQUIRE(b[j].distance == want[j]);
    }
  }
}

TEST_CASE("query points outside the domain still work") {
  std::vector<ObjectRecord> recs = gen_uniform_mbrs(1000, 0.02, 123);
  GridIndex idx = GridIndex::build(g12, Variant::two_level, recs);
  for (Point q : {Point{-0.3, 0.5}, Point{1.4, 1.4}, Point{0.5, -2.0}}) {
    std::vector<KnnNeighbor> got = knn_query(idx, q, 5);
    std::vector<double> want = brute_knn_dists(recs, q, 5);
    REQUIRE(got.size() == 5);
    for (size_t j = 0; j < 5; ++j) CHECK(got[j].distance == want[j]);
  }
}

TEST_CASE("ties at the cut are broken by id, deterministically") {
  // four identical boxes equidistant from the query
  std::vector<Mbr> boxes(4, Mbr{0.4, 0.4, 0.6, 0.6});
  std::vector<ObjectRecord> recs = records_from(boxes);
  GridIndex idx = GridIndex::build(GridConfig{4, 4, Mbr{0.0, 0.0, 1.0, 1.0}},
                                   Variant::two_level, recs);
  std::vector<KnnNeighbor> got = knn_query(idx, Point{0.5, 0.5}, 2);
  REQUIRE(got.size() == 2);
  CHECK(got[0].id == 0);
  CHECK(got[1].id == 1);
}

TEST_CASE("parameter validation") {
  std::vector<ObjectRecord> recs = gen_uniform_mbrs(50, 0.03, 127);
  GridIndex two = GridIndex::build(g12, Variant::two_level, recs);
  GridIndex one = GridIndex::build(g12, Variant::one_level, recs);
  CHECK_THROWS_AS(knn_plan(two, Point{0.5, 0.5}, 0), std::invalid_argument);
  CHECK_THROWS_AS(knn_plan(two, Point{0.5, 0.5}, 51), std::invalid_argument);
  CHECK_NOTHROW(knn_plan(two, Point{0.5, 0.5}, 50));
  // class-A counting requires the class partition
  CHECK_THROWS_AS(knn_plan(one, Point{0.5, 0.5}, 5, KnnCountMode::class_a),
                  std::invalid_argument);
  CHECK_NOTHROW(knn_plan(one, Point{0.5, 0.5}, 5, KnnCountMode::distinct_ids));
}

TEST_CASE("knn stats report the filter work") {
  std::vector<ObjectRecord> recs = gen_uniform_mbrs(2000, 0.02, 129);
  GridIndex idx = GridIndex::build(g12, Variant::two_level, recs);
  QueryStats st;
  knn_query(idx, Point{0.5, 0.5}, 10, KnnCountMode::distinct_ids, 1, &st);
  CHECK(st.tiles_scanned > 0);
  CHECK(st.distance_computations > 0);
  CHECK(st.candidates >= 10);
}
