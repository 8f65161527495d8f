// Acceptance harness: runs the eleven release criteria end to end against
// synthetic workloads with pinned seeds and prints one [PASS]/[FAIL] line per
// criterion. Exit status is non-zero when any criterion fails. Progress goes
// to stderr; the verdict block goes to stdout.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "tilegrid/tilegrid.hpp"

namespace {

using namespace tilegrid;
using tilegrid::testing::sorted;
using Clock = std::chrono::steady_clock;

double elapsed_s(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct CritResult {
  bool ok = false;
  std::string headline;          // one-line summary appended to the verdict
  std::vector<std::string> info; // indented detail lines
};

CritResult g_crit[12];

void progress(const std::string& msg) {
  std::fprintf(stderr, "[acceptance] %s\n", msg.c_str());
  std::fflush(stderr);
}

std::string fmt(const char* f, ...) {
  va_list ap;
  va_start(ap, f);
  char buf[512];
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return std::string(buf);
}

// ---- class-partition audit applied to every index the harness builds ----

struct ClassAudit {
  size_t checked = 0;
  size_t failed = 0;
} g_audit;

bool class_a_sum_ok(const GridIndex& idx) {
  size_t a = 0;
  for (int iy = 0; iy < idx.grid().ny; ++iy)
    for (int ix = 0; ix < idx.grid().nx; ++ix)
      a += idx.bucket({ix, iy}).of(BoxClass::A).size();
  return a == idx.object_count();
}

void audit_index(const GridIndex& idx) {
  if (idx.variant() == Variant::one_level) return;  // no class partition
  ++g_audit.checked;
  if (!class_a_sum_ok(idx)) ++g_audit.failed;
}

GridIndex make_index(GridConfig g, Variant v,
                     const std::vector<ObjectRecord>& objs,
                     bool presort = false) {
  GridIndex idx = GridIndex::build(g, v, objs, presort);
  audit_index(idx);
  return idx;
}

std::vector<Mbr> window_workload(size_t n, double area_ratio, uint64_t seed) {
  WorkloadOptions opt;
  opt.kind = QueryKind::window;
  opt.count = n;
  opt.area_ratio = area_ratio;
  opt.seed = seed;
  std::vector<Mbr> out;
  for (const QuerySpec& q : gen_workload(opt)) out.push_back(q.window);
  return out;
}

std::vector<Disk> disk_workload(size_t n, double area_ratio, uint64_t seed) {
  WorkloadOptions opt;
  opt.kind = QueryKind::disk;
  opt.count = n;
  opt.area_ratio = area_ratio;
  opt.seed = seed;
  std::vector<Disk> out;
  for (const QuerySpec& q : gen_workload(opt)) out.push_back(q.disk);
  return out;
}

bool multiplicity_one(std::vector<uint32_t> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

double median5(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

// ---- shared datasets (pinned seeds) ----

struct DatasetCtx {
  std::string name;
  const std::vector<ObjectRecord>* objs = nullptr;
  GridConfig grid;
  std::vector<GridIndex> idx;  // [one, two, plus]

  GridIndex& one() { return idx[0]; }
  GridIndex& two() { return idx[1]; }
  GridIndex& plus() { return idx[2]; }
};

constexpr double kRatios[3] = {0.0001, 0.001, 0.01};  // 0.01%, 0.1%, 1% area

// ---- criteria 1, 2, 6: window oracle equivalence, duplicate-freeness of the
//      raw two-level emission, endpoint-comparison reduction ----

void run_c1_c2_c6(std::vector<DatasetCtx>& ds) {
  progress("criteria 1/2/6: window oracle sweep");
  auto t0 = Clock::now();
  size_t mismatches = 0, dup_hits = 0, comp_violations = 0, windows = 0;
  uint64_t comps_two = 0, comps_one_ref = 0, comps_one_hash = 0;

  for (auto& d : ds) {
    for (int ri = 0; ri < 3; ++ri) {
      auto ws = window_workload(200, kRatios[ri], 2101 + ri);
      for (const Mbr& w : ws) {
        ++windows;
        auto oracle = sorted(testing::linear_window(*d.objs, w));

        QueryStats st2;
        auto raw_two = window_query(d.two(), w, &st2);
        if (!multiplicity_one(raw_two)) ++dup_hits;
        if (sorted(raw_two) != oracle) ++mismatches;

        auto raw_plus = window_query(d.plus(), w);
        if (!multiplicity_one(raw_plus)) ++dup_hits;
        if (sorted(raw_plus) != oracle) ++mismatches;

        QueryStats s_ref, s_hash;
        auto r_ref = window_query_one_level(d.one(), w,
                                            DedupMode::reference_point, &s_ref);
        auto r_hash = window_query_one_level(d.one(), w, DedupMode::hash_set,
                                             &s_hash);
        if (sorted(r_ref) != oracle) ++mismatches;
        if (sorted(r_hash) != oracle) ++mismatches;

        if (st2.endpoint_comparisons > s_ref.endpoint_comparisons ||
            st2.endpoint_comparisons > s_hash.endpoint_comparisons)
          ++comp_violations;
        comps_two += st2.endpoint_comparisons;
        comps_one_ref += s_ref.endpoint_comparisons;
        comps_one_hash += s_hash.endpoint_comparisons;
      }
    }
  }
  double dt = elapsed_s(t0);

  g_crit[1].ok = mismatches == 0 && dt < 60.0;
  g_crit[1].headline = fmt(
      "window results equal the linear-scan oracle on 3 datasets x 3 extents "
      "x 200 queries, all variants and dedup modes (%zu mismatches, %.1fs)",
      mismatches, dt);
  g_crit[2].ok = dup_hits == 0;
  g_crit[2].headline = fmt(
      "raw two-level emissions have multiplicity 1 for every id across %zu "
      "windows (%zu duplicate hits, no dedup container in the query path)",
      windows, dup_hits);
  g_crit[6].ok = comp_violations == 0;
  g_crit[6].headline = fmt(
      "two-level endpoint comparisons <= one-level on every window "
      "(%zu violations)", comp_violations);
  g_crit[6].info.push_back(
      fmt("totals: two-level %llu, one-level ref-point %llu, one-level hash "
          "%llu (%.1f%% of ref-point work)",
          (unsigned long long)comps_two, (unsigned long long)comps_one_ref,
          (unsigned long long)comps_one_hash,
          100.0 * (double)comps_two / (double)comps_one_ref));
}

// ---- criterion 3: disk oracle equivalence + covered-tile audit ----

void run_c3(std::vector<DatasetCtx>& ds) {
  progress("criterion 3: disk oracle sweep");
  size_t mismatches = 0, audit_failures = 0, covered_emissions = 0;

  for (auto& d : ds) {
    for (int ri = 0; ri < 3; ++ri) {
      auto qs = disk_workload(200, kRatios[ri], 2201 + ri);
      for (const Disk& q : qs) {
        auto oracle = sorted(testing::linear_disk(*d.objs, q));
        if (sorted(disk_query(d.two(), q)) != oracle) ++mismatches;
        if (sorted(disk_query(d.plus(), q)) != oracle) ++mismatches;
        if (sorted(disk_query(d.one(), q)) != oracle) ++mismatches;
        if (sorted(disk_query(d.two(), q, nullptr, true)) != oracle)
          ++mismatches;  // naive tile scan, same contract

        // Covered-tile fast path: every entry emitted from a covered tile
        // must satisfy the distance predicate on its own.
        for (const DiskTileTask& task : plan_disk(d.two(), q)) {
          if (!task.covered) continue;
          const TileBucket& b = d.two().bucket(task.task.tile);
          for (uint8_t c = 0; c < kClassCount; ++c) {
            if (!mask_has(task.task.class_mask, static_cast<BoxClass>(c)))
              continue;
            for (const Entry& e : b.by_class[c]) {
              ++covered_emissions;
              if (min_dist(q.center, e.mbr) > q.radius) ++audit_failures;
            }
          }
        }
      }
    }
  }
  g_crit[3].ok = mismatches == 0 && audit_failures == 0;
  g_crit[3].headline = fmt(
      "disk results equal the mindist<=radius oracle on 3 datasets x 3 "
      "extents x 200 queries (%zu mismatches); covered-tile fast path audited "
      "on %zu emissions (%zu predicate failures)",
      mismatches, covered_emissions, audit_failures);
}

// ---- criterion 4: class-partition invariants ----

bool membership_exact(const GridIndex& idx,
                      const std::vector<ObjectRecord>& objs) {
  const GridConfig& g = idx.grid();
  size_t expected_total = 0;
  for (const ObjectRecord& o : objs)
    expected_total += (size_t)corner_tile_range(g, o.mbr).size();
  if (expected_total != idx.total_entries()) return false;

  std::vector<uint32_t> tile_ids;
  for (int iy = 0; iy < g.ny; ++iy) {
    for (int ix = 0; ix < g.nx; ++ix) {
      TileId t{ix, iy};
      const TileBucket& b = idx.bucket(t);
      tile_ids.clear();
      for (uint8_t c = 0; c < kClassCount; ++c) {
        for (const Entry& e : b.by_class[c]) {
          if (!corner_tile_range(g, e.mbr).contains(t)) return false;
          if (idx.object(e.id).mbr != e.mbr) return false;
          if (idx.variant() == Variant::one_level) {
            if (c != 0) return false;  // flat layout keeps one bucket
          } else if (class_of(g, e.mbr, t) != static_cast<BoxClass>(c)) {
            return false;
          }
          tile_ids.push_back(e.id);
        }
      }
      std::sort(tile_ids.begin(), tile_ids.end());
      if (std::adjacent_find(tile_ids.begin(), tile_ids.end()) !=
          tile_ids.end())
        return false;  // an object may appear once per tile at most
    }
  }
  // Totals match, every entry is sound and per-tile unique => each (object,
  // intersected tile) slot is filled exactly once.
  return true;
}

void run_c4(std::vector<DatasetCtx>& ds, const std::vector<ObjectRecord>& u10k) {
  progress("criterion 4: class-partition invariants");
  bool brute_ok = true;
  DatasetCtx& d10 = ds[0];
  for (GridIndex& idx : d10.idx)
    if (!membership_exact(idx, u10k)) brute_ok = false;

  // Final verdict text is filled in at the end of main so the sum audit also
  // covers indexes built by the later criteria.
  g_crit[4].ok = brute_ok;  // combined with the audit before printing
  g_crit[4].headline = fmt(
      "tile membership + class assignment verified by brute force on the 10k "
      "dataset for all three variants (%s)", brute_ok ? "exact" : "MISMATCH");
}

// ---- criterion 5: refinement avoidance soundness ----

void run_c5(const std::vector<ObjectRecord>& g10k) {
  progress("criterion 5: refinement avoidance on polygons/linestrings");
  GridConfig grid{64, 64, {0.0, 0.0, 1.0, 1.0}};
  GridIndex idx2 = make_index(grid, Variant::two_level, g10k);
  GridIndex idxp = make_index(grid, Variant::two_level_plus, g10k);

  auto ws = window_workload(200, 0.01, 2301);
  auto qs = disk_workload(200, 0.01, 2302);

  size_t mismatches = 0, false_accepts = 0, bookkeeping = 0;
  uint64_t w_avoided = 0, w_cand = 0, d_avoided = 0, d_cand = 0;

  for (const Mbr& w : ws) {
    auto exact = sorted(testing::linear_window_exact(g10k, w));
    QueryStats sS, sA, sP;
    auto rS = sorted(query_with_refinement(idx2, w, RefineMode::simple, &sS));
    auto rA = sorted(query_with_refinement(idx2, w, RefineMode::ref_avoid, &sA));
    auto rP =
        sorted(query_with_refinement(idx2, w, RefineMode::ref_avoid_plus, &sP));
    auto rPlusVariant =
        sorted(query_with_refinement(idxp, w, RefineMode::ref_avoid_plus));
    if (rS != exact || rA != exact || rP != exact || rPlusVariant != exact)
      ++mismatches;
    for (const QueryStats* s : {&sS, &sA, &sP})
      if (s->refinements_run + s->refinements_avoided != s->candidates)
        ++bookkeeping;
    w_avoided += sA.refinements_avoided;
    w_cand += sA.candidates;

    // Zero-false-accept audit straight from the predicate pair.
    for (uint32_t id : testing::linear_window(g10k, w)) {
      const ObjectRecord& o = g10k[id];
      if (refine_avoid_window(o.mbr, w) && !refine(o, w)) ++false_accepts;
    }
  }

  for (const Disk& q : qs) {
    auto exact = sorted(testing::linear_disk_exact(g10k, q));
    QueryStats sS, sA;
    auto rS = sorted(query_with_refinement(idx2, q, RefineMode::simple, &sS));
    auto rA = sorted(query_with_refinement(idx2, q, RefineMode::ref_avoid, &sA));
    if (rS != exact || rA != exact) ++mismatches;
    for (const QueryStats* s : {&sS, &sA})
      if (s->refinements_run + s->refinements_avoided != s->candidates)
        ++bookkeeping;
    d_avoided += sA.refinements_avoided;
    d_cand += sA.candidates;

    for (uint32_t id : testing::linear_disk(g10k, q)) {
      const ObjectRecord& o = g10k[id];
      if (refine_avoid_disk(o.mbr, q) && !refine(o, q)) ++false_accepts;
    }
  }

  double w_rate = w_cand ? 100.0 * (double)w_avoided / (double)w_cand : 0.0;
  double d_rate = d_cand ? 100.0 * (double)d_avoided / (double)d_cand : 0.0;
  g_crit[5].ok = mismatches == 0 && false_accepts == 0 && bookkeeping == 0;
  g_crit[5].headline = fmt(
      "refinement modes agree with the exact-geometry oracle on 200 windows + "
      "200 disks over 10k polygons/linestrings; %zu false accepts, %zu result "
      "mismatches", false_accepts, mismatches);
  g_crit[5].info.push_back(
      fmt("avoidance rate (reported, not asserted): windows %.1f%% "
          "(%llu/%llu), disks %.1f%% (%llu/%llu); soft >=50%% target %s",
          w_rate, (unsigned long long)w_avoided, (unsigned long long)w_cand,
          d_rate, (unsigned long long)d_avoided, (unsigned long long)d_cand,
          (w_rate >= 50.0 ? "met on windows" : "not met on windows")));
}

// ---- criterion 7: spatial join vs nested loop + skip-safety audit ----

void run_c7() {
  progress("criterion 7: 5k x 5k spatial join");
  auto t0 = Clock::now();
  auto left = gen_uniform_mbrs(5000, 0.01, 3001);
  auto right = gen_uniform_mbrs(5000, 0.01, 3002);
  GridConfig grid{64, 64, {0.0, 0.0, 1.0, 1.0}};
  GridIndex li = make_index(grid, Variant::two_level, left, true);
  GridIndex ri = make_index(grid, Variant::two_level, right, true);

  JoinResult res = spatial_join(li, ri, 1);
  auto got = res.pairs;
  std::sort(got.begin(), got.end());
  bool nodup = std::adjacent_find(got.begin(), got.end()) == got.end();

  auto expect = testing::nested_loop_join(left, right);
  std::sort(expect.begin(), expect.end());

  JoinResult skipped = spatial_join_skipped_pairs(li, ri);
  size_t missing = 0;
  for (const auto& p : skipped.pairs)
    if (!std::binary_search(got.begin(), got.end(), p)) ++missing;

  double dt = elapsed_s(t0);
  g_crit[7].ok = nodup && got == expect && missing == 0 && dt < 60.0;
  g_crit[7].headline = fmt(
      "join on a shared 64x64 grid emits the brute-force pair set exactly "
      "once (%zu pairs, duplicates: %s, %.1fs)", got.size(),
      nodup ? "none" : "FOUND", dt);
  g_crit[7].info.push_back(
      fmt("skip-safety audit: %zu pairs from the 7 skipped class pairs, %zu "
          "missing from the main result", skipped.pairs.size(), missing));
}

// ---- criterion 8: kNN distance oracle + bound validity ----

void run_c8(DatasetCtx& d10, const std::vector<ObjectRecord>& u10k) {
  progress("criterion 8: kNN oracle, k in {1,10,100}");
  std::mt19937_64 rng(2500);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const uint32_t ks[3] = {1, 10, 100};
  size_t mismatches = 0, bound_failures = 0;

  for (int qi = 0; qi < 100; ++qi) {
    Point q{uni(rng), uni(rng)};
    std::vector<double> all;
    all.reserve(u10k.size());
    for (const ObjectRecord& o : u10k) all.push_back(min_dist(q, o.mbr));
    std::sort(all.begin(), all.end());

    for (uint32_t k : ks) {
      KnnPlan plan = knn_plan(d10.two(), q, k);
      if (plan.bound_d < all[k - 1]) ++bound_failures;

      auto res = knn_query(d10.two(), q, k);
      std::vector<double> got;
      for (const KnnNeighbor& n : res) got.push_back(n.distance);
      std::sort(got.begin(), got.end());
      std::vector<double> want(all.begin(), all.begin() + k);
      if (got != want) ++mismatches;
    }
  }
  g_crit[8].ok = mismatches == 0 && bound_failures == 0;
  g_crit[8].headline = fmt(
      "kNN distance multisets equal the brute-force oracle for 100 query "
      "points x k in {1,10,100} (%zu mismatches); bound_d >= true k-th "
      "distance in every case (%zu violations)", mismatches, bound_failures);
}

// ---- criterion 9: batch equivalence + parallel timing ----

void run_c9(GridIndex& two_1m, const std::vector<ObjectRecord>& u1m) {
  progress("criterion 9: 10k-query batch on 1M objects");
  auto ws = window_workload(10000, 0.001, 2900);
  std::vector<RangeQuery> queries(ws.begin(), ws.end());

  std::vector<std::vector<uint32_t>> ref;
  ref.reserve(ws.size());
  for (const Mbr& w : ws) ref.push_back(sorted(window_query(two_1m, w)));
  (void)u1m;

  struct Config {
    const char* name;
    bool tiles;
    int threads;
  };
  const Config configs[6] = {{"queries@1", false, 1}, {"queries@2", false, 2},
                             {"queries@8", false, 8}, {"tiles@1", true, 1},
                             {"tiles@2", true, 2},    {"tiles@8", true, 8}};
  size_t mismatched_runs = 0;
  double t_tiles1 = 0.0, t_tiles8 = 0.0;

  auto run_once = [&](const Config& c, bool check) {
    auto t0 = Clock::now();
    BatchResult r = c.tiles ? batch_tiles_based(two_1m, queries, c.threads)
                            : batch_queries_based(two_1m, queries, c.threads);
    double dt = elapsed_s(t0);
    if (check) {
      bool same = r.per_query.size() == ref.size();
      for (size_t i = 0; same && i < ref.size(); ++i)
        if (sorted(r.per_query[i]) != ref[i]) same = false;
      if (!same) ++mismatched_runs;
    }
    return dt;
  };

  for (const Config& c : configs) {
    double dt = run_once(c, true);
    if (c.tiles && c.threads == 1) t_tiles1 = dt;
    if (c.tiles && c.threads == 8) t_tiles8 = dt;
    g_crit[9].info.push_back(fmt("%-10s %7.0f ms", c.name, dt * 1000.0));
  }

  // Timing clause: alternate extra rounds and keep the best of each side so
  // scheduler noise cannot decide the comparison.
  for (int round = 0; round < 3; ++round) {
    t_tiles1 = std::min(t_tiles1, run_once(configs[3], false));
    t_tiles8 = std::min(t_tiles8, run_once(configs[5], false));
  }

  bool speedup_ok = t_tiles8 < t_tiles1;
  g_crit[9].ok = mismatched_runs == 0 && speedup_ok;
  g_crit[9].headline = fmt(
      "both strategies x threads {1,2,8} return identical per-query results "
      "(%zu mismatched runs); tiles@8 %s tiles@1 (best %.0f ms vs %.0f ms, "
      "speedup %.2fx)", mismatched_runs, speedup_ok ? "faster than" :
      "NOT faster than", t_tiles8 * 1000.0, t_tiles1 * 1000.0,
      t_tiles1 / t_tiles8);
}

// ---- criterion 10: incremental inserts match a from-scratch build ----

void run_c10(const std::vector<ObjectRecord>& u100k) {
  progress("criterion 10: build 90% + insert 10%");
  GridConfig grid{128, 128, {0.0, 0.0, 1.0, 1.0}};
  const size_t cut = u100k.size() * 9 / 10;
  std::vector<ObjectRecord> head(u100k.begin(), u100k.begin() + cut);
  auto ws = window_workload(200, 0.001, 2901);
  auto qs = disk_workload(100, 0.001, 2902);

  size_t mismatches = 0;
  const Variant variants[3] = {Variant::one_level, Variant::two_level,
                               Variant::two_level_plus};
  const char* names[3] = {"one-level", "two-level", "two-level+"};
  for (int vi = 0; vi < 3; ++vi) {
    GridIndex full = make_index(grid, variants[vi], u100k);
    GridIndex part = make_index(grid, variants[vi], head);
    auto t0 = Clock::now();
    for (size_t i = cut; i < u100k.size(); ++i) part.insert(u100k[i]);
    double dt = elapsed_s(t0);
    audit_index(part);

    for (const Mbr& w : ws)
      if (sorted(window_query(full, w)) != sorted(window_query(part, w)))
        ++mismatches;
    for (const Disk& q : qs)
      if (sorted(disk_query(full, q)) != sorted(disk_query(part, q)))
        ++mismatches;
    g_crit[10].info.push_back(
        fmt("%-10s %zu inserts in %.1f ms (%.0fk inserts/s)", names[vi],
            u100k.size() - cut, dt * 1000.0,
            (double)(u100k.size() - cut) / dt / 1000.0));
  }
  g_crit[10].ok = mismatches == 0;
  g_crit[10].headline = fmt(
      "build(90%%)+insert(10%%) answers 200 windows + 100 disks identically "
      "to a from-scratch build for all three variants (%zu mismatches)",
      mismatches);
}

// ---- criterion 11: desk-scale performance direction ----

void run_c11(GridIndex& two_1m, const std::vector<ObjectRecord>& u1m) {
  progress("criterion 11: 1M-object window timing, 5 rounds");
  GridConfig grid = two_1m.grid();
  GridIndex one = make_index(grid, Variant::one_level, u1m);
  GridIndex plus = make_index(grid, Variant::two_level_plus, u1m);
  auto ws = window_workload(2000, 0.001, 2400);

  GridIndex* idx[3] = {&one, &two_1m, &plus};
  const char* names[3] = {"one-level", "two-level", "two-level+"};
  auto run_once = [&](GridIndex& ix) {
    size_t sink = 0;
    auto t0 = Clock::now();
    for (const Mbr& w : ws) sink += window_query(ix, w).size();
    double dt = elapsed_s(t0);
    if (sink == 0) std::fprintf(stderr, "empty workload?\n");
    return dt / (double)ws.size() * 1e6;  // avg us per query
  };

  for (int v = 0; v < 3; ++v) run_once(*idx[v]);  // warm-up
  std::vector<double> us[3];
  for (int round = 0; round < 5; ++round)
    for (int v = 0; v < 3; ++v) us[v].push_back(run_once(*idx[v]));

  double med[3];
  for (int v = 0; v < 3; ++v) {
    med[v] = median5(us[v]);
    QueryStats st;
    for (const Mbr& w : ws) window_query(*idx[v], w, &st);
    g_crit[11].info.push_back(
        fmt("%-10s median %7.2f us/query, %llu endpoint comparisons", names[v],
            med[v], (unsigned long long)st.endpoint_comparisons));
  }
  bool ok = med[2] <= med[1] && med[1] < med[0];
  g_crit[11].ok = ok;
  g_crit[11].headline = fmt(
      "1M uniform objects, 0.1%%-area windows, 64x64 grid: medians order "
      "two-level+ (%.2f us) %s two-level (%.2f us) %s one-level (%.2f us)",
      med[2], med[2] <= med[1] ? "<=" : ">", med[1],
      med[1] < med[0] ? "<" : ">=", med[0]);
}

}  // namespace

int main() {
  auto t_all = Clock::now();
  progress("generating datasets");
  auto u10k = gen_uniform_mbrs(10000, 0.004, 1001);
  auto u100k = gen_uniform_mbrs(100000, 0.0015, 1002);
  auto c100k = gen_clustered_mbrs(100000, 20, 0.06, 0.0015, 1003);
  auto g10k = gen_geometry_records(10000, 0.03, 1004);

  std::vector<DatasetCtx> ds(3);
  const std::vector<ObjectRecord>* sources[3] = {&u10k, &u100k, &c100k};
  const char* names[3] = {"uniform-10k", "uniform-100k", "clustered-100k"};
  const int gsize[3] = {64, 128, 128};
  for (int i = 0; i < 3; ++i) {
    ds[i].name = names[i];
    ds[i].objs = sources[i];
    ds[i].grid = GridConfig{gsize[i], gsize[i], {0.0, 0.0, 1.0, 1.0}};
    progress(fmt("building %s on %dx%d", names[i], gsize[i], gsize[i]));
    for (Variant v :
         {Variant::one_level, Variant::two_level, Variant::two_level_plus})
      ds[i].idx.push_back(make_index(ds[i].grid, v, *sources[i]));
  }

  run_c1_c2_c6(ds);
  run_c3(ds);
  run_c4(ds, u10k);
  run_c5(g10k);
  run_c7();
  run_c8(ds[0], u10k);

  progress("generating the 1M-object dataset");
  auto u1m = gen_uniform_mbrs(1000000, 0.0005, 1005);
  GridConfig grid1m{64, 64, {0.0, 0.0, 1.0, 1.0}};
  GridIndex two_1m = make_index(grid1m, Variant::two_level, u1m);
  run_c9(two_1m, u1m);
  run_c10(u100k);
  run_c11(two_1m, u1m);

  // Criterion 4 also covers every index built above via the running audit.
  g_crit[4].info.push_back(
      fmt("class-A bucket sums equal the object count on %zu/%zu "
          "class-partitioned indexes built during this run",
          g_audit.checked - g_audit.failed, g_audit.checked));
  g_crit[4].ok = g_crit[4].ok && g_audit.failed == 0;

  const char* crit_names[12] = {
      "",
      "window-query oracle equivalence",
      "duplicate-free raw emission",
      "disk-query oracle equivalence",
      "class-partition invariants",
      "refinement avoidance soundness",
      "endpoint-comparison reduction",
      "spatial-join correctness",
      "kNN correctness",
      "batch equivalence and parallel timing",
      "incremental update path",
      "performance direction at 1M",
  };

  bool all_ok = true;
  std::printf("==== acceptance verdict ====\n");
  for (int i = 1; i <= 11; ++i) {
    std::printf("[%s] criterion %2d (%s): %s\n", g_crit[i].ok ? "PASS" : "FAIL",
                i, crit_names[i], g_crit[i].headline.c_str());
    for (const std::string& line : g_crit[i].info)
      std::printf("         %s\n", line.c_str());
    if (!g_crit[i].ok) all_ok = false;
  }
  std::printf("==== %s in %.1fs ====\n", all_ok ? "ALL CRITERIA PASSED"
                                                : "FAILURES PRESENT",
              elapsed_s(t_all));
  return all_ok ? 0 : 1;
}
