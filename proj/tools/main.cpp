#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tilegrid/tilegrid.hpp"

namespace tg = tilegrid;

namespace {

constexpr int kExitError = 1;
constexpr int kExitMismatch = 2;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

tg::GridConfig parse_grid(const std::string& s) {
  int nx = 0;
  int ny = 0;
  char sep = 0;
  std::istringstream in(s);
  if (in >> nx && in.get(sep) && sep == 'x' && in >> ny) {
    // NxM form
  } else {
    ny = nx;
  }
  if (nx < 1 || ny < 1 || !in.eof())
    throw CLI::ValidationError("--grid", "expected N or NxM with N,M >= 1");
  return tg::GridConfig{nx, ny, tg::Mbr{0.0, 0.0, 1.0, 1.0}};
}

struct DataArgs {
  std::string path;
  std::string format = "mbr-csv";

  void attach(CLI::App* cmd, const std::string& flag = "--data",
              const std::string& fmt_flag = "--format") {
    cmd->add_option(flag, path, "input dataset file")->required();
    cmd->add_option(fmt_flag, format, "dataset format")
        ->check(CLI::IsMember({"mbr-csv", "wkt"}));
  }

  tg::Dataset load() const {
    return tg::ingest_file(path, format == "wkt" ? tg::FileFormat::wkt
                                                 : tg::FileFormat::mbr_csv);
  }
};

tg::Variant parse_variant(const std::string& v) {
  if (v == "1level") return tg::Variant::one_level;
  if (v == "2level") return tg::Variant::two_level;
  return tg::Variant::two_level_plus;  // "2level+"
}

CLI::Validator variant_values() {
  return CLI::IsMember({"1level", "2level", "2level+"});
}

std::vector<tg::QuerySpec> load_workload(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return tg::parse_workload(in);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

// ---- brute-force oracles (independent of the index) ----

std::vector<uint32_t> oracle_window(const std::vector<tg::ObjectRecord>& recs,
                                    const tg::Mbr& w, bool exact) {
  std::vector<uint32_t> out;
  for (const tg::ObjectRecord& r : recs)
    if (tg::intersects(r.mbr, w) && (!exact || tg::refine(r, w)))
      out.push_back(r.id);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<uint32_t> oracle_disk(const std::vector<tg::ObjectRecord>& recs,
                                  const tg::Disk& d, bool exact) {
  std::vector<uint32_t> out;
  for (const tg::ObjectRecord& r : recs)
    if (tg::min_dist(d.center, r.mbr) <= d.radius && (!exact || tg::refine(r, d)))
      out.push_back(r.id);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> oracle_knn_dists(const std::vector<tg::ObjectRecord>& recs,
                                     const tg::Point& q, uint32_t k) {
  std::vector<double> d;
  d.reserve(recs.size());
  for (const tg::ObjectRecord& r : recs) d.push_back(tg::min_dist(q, r.mbr));
  std::sort(d.begin(), d.end());
  d.resize(std::min<size_t>(k, d.size()));
  return d;
}

void print_stats(std::ostream& out, const tg::QueryStats& st) {
  out << "endpoint_comparisons: " << st.endpoint_comparisons << "\n"
      << "candidates: " << st.candidates << "\n"
      << "tiles_scanned: " << st.tiles_scanned << "\n"
      << "distance_computations: " << st.distance_computations << "\n"
      << "refinements_run: " << st.refinements_run << "\n"
      << "refinements_avoided: " << st.refinements_avoided << "\n";
}

int report_mismatch(size_t query_idx, size_t got, size_t want) {
  std::cerr << "oracle mismatch at query " << query_idx << ": got " << got
            << " ids, oracle has " << want << "\n";
  return kExitMismatch;
}

// ---- subcommand implementations ----

int run_ingest(const DataArgs& data, const std::string& out_path,
               const std::string& out_format) {
  tg::Dataset ds = data.load();
  std::ofstream out = open_out(out_path);
  if (out_format == "wkt")
    tg::write_wkt(ds, out);
  else
    tg::write_mbr_csv(ds, out);
  const tg::Mbr& b = ds.normalization.source_bbox;
  std::cerr << "records: " << ds.records.size() << "\n"
            << "source_bbox: [" << b.xlo << "," << b.ylo << "] - [" << b.xhi
            << "," << b.yhi << "]\n"
            << "rescaled: " << (ds.normalization.applied ? "yes" : "no") << "\n";
  return 0;
}

struct GenDataArgs {
  std::string kind = "uniform";
  size_t n = 10000;
  double extent = 0.001;
  size_t clusters = 16;
  double sigma = 0.05;
  uint64_t seed = 1;
  std::string output;
};

int run_gen_data(const GenDataArgs& a) {
  tg::Dataset ds;
  if (a.kind == "uniform")
    ds.records = tg::gen_uniform_mbrs(a.n, a.extent, a.seed);
  else if (a.kind == "clustered")
    ds.records = tg::gen_clustered_mbrs(a.n, a.clusters, a.sigma, a.extent, a.seed);
  else
    ds.records = tg::gen_geometry_records(a.n, a.extent, a.seed);
  std::ofstream out = open_out(a.output);
  if (a.kind == "geometry")
    tg::write_wkt(ds, out);
  else
    tg::write_mbr_csv(ds, out);
  std::cerr << "records: " << ds.records.size() << "\n";
  return 0;
}

struct GenWorkloadArgs {
  std::string kind = "window";
  size_t count = 100;
  double area_ratio = 0.001;
  uint32_t k = 10;
  uint64_t seed = 1;
  bool nonempty = false;
  std::string output;
};

int run_gen_workload(const GenWorkloadArgs& a, const DataArgs* data) {
  tg::WorkloadOptions opt;
  opt.kind = a.kind == "window"  ? tg::QueryKind::window
             : a.kind == "disk" ? tg::QueryKind::disk
                                : tg::QueryKind::knn;
  opt.count = a.count;
  opt.area_ratio = a.area_ratio;
  opt.k = a.k;
  opt.seed = a.seed;
  opt.nonempty = a.nonempty;
  std::optional<tg::Dataset> ds;
  if (a.nonempty) {
    if (data->path.empty())
      throw std::runtime_error("--nonempty needs --data");
    ds = data->load();
  }
  std::vector<tg::QuerySpec> qs =
      tg::gen_workload(opt, ds ? &ds->records : nullptr);
  std::ofstream out = open_out(a.output);
  tg::write_workload(qs, out);
  std::cerr << "queries: " << qs.size() << "\n";
  return 0;
}

int run_build(const DataArgs& data, const tg::GridConfig& grid,
              tg::Variant variant, double insert_tail, bool presort) {
  tg::Dataset ds = data.load();
  size_t n = ds.records.size();
  size_t bulk = static_cast<size_t>(static_cast<double>(n) * (1.0 - insert_tail));
  std::vector<tg::ObjectRecord> head(ds.records.begin(),
                                     ds.records.begin() + bulk);

  Clock::time_point t0 = Clock::now();
  tg::GridIndex index = tg::GridIndex::build(grid, variant, std::move(head), presort);
  double bulk_ms = ms_since(t0);
  t0 = Clock::now();
  for (size_t i = bulk; i < n; ++i) index.insert(ds.records[i]);
  double insert_ms = ms_since(t0);

  double total_s = (bulk_ms + insert_ms) / 1000.0;
  std::cout << "objects: " << index.object_count() << "\n"
            << "entries: " << index.total_entries() << "\n"
            << "replication_ratio: " << index.replication_ratio() << "\n"
            << "storage_bytes: " << index.storage_bytes() << "\n"
            << "bulk_ms: " << bulk_ms << "\n"
            << "insert_ms: " << insert_ms << "\n"
            << "objects_per_s: "
            << (total_s > 0 ? static_cast<double>(n) / total_s : 0.0) << "\n";
  return 0;
}

struct QueryArgs {
  std::string workload;
  std::string mode = "filter";
  std::string dedup = "ref";
  bool oracle = false;
  bool naive_disk_scan = false;
  std::string output;
};

int run_query(const DataArgs& data, const tg::GridConfig& grid,
              tg::Variant variant, const QueryArgs& a) {
  tg::Dataset ds = data.load();
  std::vector<tg::QuerySpec> qs = load_workload(a.workload);
  for (const tg::QuerySpec& q : qs)
    if (q.kind == tg::QueryKind::knn)
      throw std::runtime_error("workload has K lines: use the knn subcommand");
  if (a.mode == "refavoid+") {
    for (const tg::QuerySpec& q : qs)
      if (q.kind == tg::QueryKind::disk)
        throw std::runtime_error(
            "refavoid+ applies to window queries only; disks have no "
            "tile-context comparison to drop");
  }

  std::vector<tg::ObjectRecord> recs = ds.records;  // oracle keeps a copy
  tg::GridIndex index = tg::GridIndex::build(grid, variant, std::move(ds.records));
  bool exact = a.mode != "filter";
  tg::RefineMode rmode = a.mode == "simple"     ? tg::RefineMode::simple
                         : a.mode == "refavoid" ? tg::RefineMode::ref_avoid
                                                : tg::RefineMode::ref_avoid_plus;
  tg::DedupMode dmode = a.dedup == "hash" ? tg::DedupMode::hash_set
                                          : tg::DedupMode::reference_point;

  std::optional<std::ofstream> out;
  if (!a.output.empty()) out = open_out(a.output);

  tg::QueryStats stats;
  size_t results = 0;
  Clock::time_point t0 = Clock::now();
  std::vector<std::vector<uint32_t>> all(qs.size());
  for (size_t i = 0; i < qs.size(); ++i) {
    const tg::QuerySpec& q = qs[i];
    std::vector<uint32_t>& ids = all[i];
    if (q.kind == tg::QueryKind::window) {
      if (exact)
        ids = tg::query_with_refinement(index, q.window, rmode, &stats);
      else if (variant == tg::Variant::one_level)
        ids = tg::window_query_one_level(index, q.window, dmode, &stats);
      else
        ids = tg::window_query(index, q.window, &stats);
    } else {
      if (exact)
        ids = tg::query_with_refinement(index, q.disk, rmode, &stats);
      else
        ids = tg::disk_query(index, q.disk, &stats, a.naive_disk_scan);
    }
    std::sort(ids.begin(), ids.end());
  }
  double wall = ms_since(t0);

  for (size_t i = 0; i < qs.size(); ++i) {
    results += all[i].size();
    if (out) {
      *out << (qs[i].kind == tg::QueryKind::window ? "W" : "D");
      for (uint32_t id : all[i]) *out << ' ' << id;
      *out << '\n';
    }
    if (a.oracle) {
      std::vector<uint32_t> want =
          qs[i].kind == tg::QueryKind::window
              ? oracle_window(recs, qs[i].window, exact)
              : oracle_disk(recs, qs[i].disk, exact);
      if (all[i] != want) return report_mismatch(i, all[i].size(), want.size());
    }
  }

  std::cout << "queries: " << qs.size() << "\n"
            << "wall_ms: " << wall << "\n"
            << "avg_us: " << (qs.empty() ? 0.0 : wall * 1000.0 / qs.size())
            << "\n"
            << "results: " << results << "\n";
  print_stats(std::cout, stats);
  if (a.oracle) std::cout << "oracle: ok\n";
  return 0;
}

struct BatchArgs {
  std::string workload;
  std::string strategy = "tiles";
  int threads = 0;
  bool oracle = false;
  std::string output;
};

int run_batch(const DataArgs& data, const tg::GridConfig& grid,
              tg::Variant variant, const BatchArgs& a) {
  tg::Dataset ds = data.load();
  std::vector<tg::QuerySpec> qs = load_workload(a.workload);
  std::vector<tg::RangeQuery> queries;
  for (const tg::QuerySpec& q : qs) {
    if (q.kind == tg::QueryKind::window)
      queries.emplace_back(q.window);
    else if (q.kind == tg::QueryKind::disk)
      queries.emplace_back(q.disk);
    else
      throw std::runtime_error("workload has K lines: use the knn subcommand");
  }
  tg::GridIndex index = tg::GridIndex::build(grid, variant, std::move(ds.records));
  int threads = a.threads > 0 ? a.threads : tg::default_thread_count();

  Clock::time_point t0 = Clock::now();
  tg::BatchResult res = a.strategy == "queries"
                            ? tg::batch_queries_based(index, queries, threads)
                            : tg::batch_tiles_based(index, queries, threads);
  double wall = ms_since(t0);

  size_t results = 0;
  for (std::vector<uint32_t>& ids : res.per_query) {
    std::sort(ids.begin(), ids.end());
    results += ids.size();
  }
  if (!a.output.empty()) {
    std::ofstream out = open_out(a.output);
    for (size_t i = 0; i < res.per_query.size(); ++i) {
      out << (qs[i].kind == tg::QueryKind::window ? "W" : "D");
      for (uint32_t id : res.per_query[i]) out << ' ' << id;
      out << '\n';
    }
  }
  if (a.oracle) {
    for (size_t i = 0; i < queries.size(); ++i) {
      std::vector<uint32_t> want =
          qs[i].kind == tg::QueryKind::window
              ? tg::window_query(index, qs[i].window)
              : tg::disk_query(index, qs[i].disk);
      std::sort(want.begin(), want.end());
      if (res.per_query[i] != want)
        return report_mismatch(i, res.per_query[i].size(), want.size());
    }
  }

  std::cout << "queries: " << queries.size() << "\n"
            << "strategy: " << a.strategy << "\n"
            << "threads: " << threads << "\n"
            << "wall_ms: " << wall << "\n"
            << "queries_per_s: "
            << (wall > 0 ? static_cast<double>(queries.size()) * 1000.0 / wall
                         : 0.0)
            << "\n"
            << "results: " << results << "\n";
  print_stats(std::cout, res.stats);
  if (a.oracle) std::cout << "oracle: ok\n";
  return 0;
}

struct JoinArgs {
  DataArgs left;
  DataArgs right;
  int threads = 1;
  bool audit = false;
  bool oracle = false;
  std::string output;
};

int run_join(const tg::GridConfig& grid, tg::Variant variant, JoinArgs& a) {
  tg::Dataset lds = a.left.load();
  tg::Dataset rds = a.right.load();
  std::vector<tg::ObjectRecord> lrecs = lds.records;
  std::vector<tg::ObjectRecord> rrecs = rds.records;
  tg::GridIndex li = tg::GridIndex::build(grid, variant, std::move(lds.records), true);
  tg::GridIndex ri = tg::GridIndex::build(grid, variant, std::move(rds.records), true);

  Clock::time_point t0 = Clock::now();
  tg::JoinResult res = tg::spatial_join(li, ri, a.threads);
  double wall = ms_since(t0);
  std::sort(res.pairs.begin(), res.pairs.end());

  if (a.oracle) {
    std::vector<std::pair<uint32_t, uint32_t>> want;
    for (const tg::ObjectRecord& l : lrecs)
      for (const tg::ObjectRecord& r : rrecs)
        if (tg::intersects(l.mbr, r.mbr)) want.emplace_back(l.id, r.id);
    std::sort(want.begin(), want.end());
    if (res.pairs != want) {
      std::cerr << "oracle mismatch: got " << res.pairs.size()
                << " pairs, oracle has " << want.size() << "\n";
      return kExitMismatch;
    }
  }
  if (a.audit) {
    tg::JoinResult skipped = tg::spatial_join_skipped_pairs(li, ri);
    std::sort(skipped.pairs.begin(), skipped.pairs.end());
    skipped.pairs.erase(
        std::unique(skipped.pairs.begin(), skipped.pairs.end()),
        skipped.pairs.end());
    for (const std::pair<uint32_t, uint32_t>& p : skipped.pairs)
      if (!std::binary_search(res.pairs.begin(), res.pairs.end(), p)) {
        std::cerr << "audit failure: skipped pair (" << p.first << ","
                  << p.second << ") missing from the join result\n";
        return kExitMismatch;
      }
    std::cout << "audit_skipped_pairs: " << skipped.pairs.size() << "\n"
              << "audit: ok\n";
  }
  if (!a.output.empty()) {
    std::ofstream out = open_out(a.output);
    for (const std::pair<uint32_t, uint32_t>& p : res.pairs)
      out << p.first << ' ' << p.second << '\n';
  }

  std::cout << "pairs: " << res.pairs.size() << "\n"
            << "comparisons: " << res.comparisons << "\n"
            << "wall_ms: " << wall << "\n";
  if (a.oracle) std::cout << "oracle: ok\n";
  return 0;
}

struct KnnArgs {
  std::string workload;
  std::string count_mode = "distinct";
  int threads = 1;
  bool oracle = false;
  std::string output;
};

int run_knn(const DataArgs& data, const tg::GridConfig& grid,
            tg::Variant variant, const KnnArgs& a) {
  tg::Dataset ds = data.load();
  std::vector<tg::QuerySpec> qs = load_workload(a.workload);
  for (const tg::QuerySpec& q : qs)
    if (q.kind != tg::QueryKind::knn)
      throw std::runtime_error("knn expects a workload of K lines only");
  std::vector<tg::ObjectRecord> recs = ds.records;
  tg::GridIndex index = tg::GridIndex::build(grid, variant, std::move(ds.records));
  tg::KnnCountMode mode = a.count_mode == "classa" ? tg::KnnCountMode::class_a
                                                   : tg::KnnCountMode::distinct_ids;

  std::optional<std::ofstream> out;
  if (!a.output.empty()) out = open_out(a.output);

  tg::QueryStats stats;
  Clock::time_point t0 = Clock::now();
  std::vector<std::vector<tg::KnnNeighbor>> all(qs.size());
  for (size_t i = 0; i < qs.size(); ++i)
    all[i] = tg::knn_query(index, qs[i].point, qs[i].k, mode, a.threads, &stats);
  double wall = ms_since(t0);

  for (size_t i = 0; i < qs.size(); ++i) {
    if (out) {
      *out << 'K';
      for (const tg::KnnNeighbor& n : all[i]) *out << ' ' << n.id;
      *out << '\n';
    }
    if (a.oracle) {
      std::vector<double> want = oracle_knn_dists(recs, qs[i].point, qs[i].k);
      bool ok = want.size() == all[i].size();
      for (size_t j = 0; ok && j < want.size(); ++j)
        ok = all[i][j].distance == want[j];
      if (!ok) return report_mismatch(i, all[i].size(), want.size());
    }
  }

  std::cout << "queries: " << qs.size() << "\n"
            << "wall_ms: " << wall << "\n";
  print_stats(std::cout, stats);
  if (a.oracle) std::cout << "oracle: ok\n";
  return 0;
}

struct BenchArgs {
  std::string workload;
  std::vector<int> grids{32, 64, 128};
  std::vector<std::string> variants{"1level", "2level", "2level+"};
};

// CSV columns, in order:
//   variant,grid,build_ms,queries,wall_ms,avg_us_per_query,
//   endpoint_comparisons,candidates,results,tiles_scanned,
//   distance_computations
int run_bench(const DataArgs& data, const BenchArgs& a) {
  tg::Dataset ds = data.load();
  std::vector<tg::QuerySpec> qs = load_workload(a.workload);
  for (const tg::QuerySpec& q : qs)
    if (q.kind == tg::QueryKind::knn)
      throw std::runtime_error("bench expects a workload of W/D lines");

  std::cout << "variant,grid,build_ms,queries,wall_ms,avg_us_per_query,"
               "endpoint_comparisons,candidates,results,tiles_scanned,"
               "distance_computations\n";
  for (const std::string& vname : a.variants) {
    tg::Variant variant = parse_variant(vname);
    for (int gsize : a.grids) {
      tg::GridConfig grid{gsize, gsize, tg::Mbr{0.0, 0.0, 1.0, 1.0}};
      std::vector<tg::ObjectRecord> recs = ds.records;
      Clock::time_point t0 = Clock::now();
      tg::GridIndex index = tg::GridIndex::build(grid, variant, std::move(recs));
      double build_ms = ms_since(t0);

      tg::QueryStats stats;
      size_t results = 0;
      t0 = Clock::now();
      for (const tg::QuerySpec& q : qs) {
        std::vector<uint32_t> ids;
        if (q.kind == tg::QueryKind::window)
          ids = variant == tg::Variant::one_level
                    ? tg::window_query_one_level(index, q.window,
                                                 tg::DedupMode::reference_point,
                                                 &stats)
                    : tg::window_query(index, q.window, &stats);
        else
          ids = tg::disk_query(index, q.disk, &stats);
        results += ids.size();
      }
      double wall = ms_since(t0);
      std::printf("%s,%d,%.3f,%zu,%.3f,%.3f,%llu,%llu,%zu,%llu,%llu\n",
                  vname.c_str(), gsize, build_ms, qs.size(), wall,
                  qs.empty() ? 0.0 : wall * 1000.0 / static_cast<double>(qs.size()),
                  static_cast<unsigned long long>(stats.endpoint_comparisons),
                  static_cast<unsigned long long>(stats.candidates), results,
                  static_cast<unsigned long long>(stats.tiles_scanned),
                  static_cast<unsigned long long>(stats.distance_computations));
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "tilegrid: a two-level uniform-grid index for axis-parallel MBRs with "
      "duplicate-free window, disk and convex queries"};
  app.require_subcommand(1);

  // ingest
  DataArgs ingest_data;
  std::string ingest_out;
  std::string ingest_out_format = "mbr-csv";
  CLI::App* c_ingest = app.add_subcommand(
      "ingest", "parse, validate and rescale a dataset into the unit square");
  ingest_data.attach(c_ingest, "--input");
  c_ingest->add_option("--output", ingest_out, "normalized output file")->required();
  c_ingest->add_option("--write-format", ingest_out_format, "output format")
      ->check(CLI::IsMember({"mbr-csv", "wkt"}));

  // gen-data
  GenDataArgs gd;
  CLI::App* c_gend = app.add_subcommand("gen-data", "generate a synthetic dataset");
  c_gend->add_option("--kind", gd.kind, "uniform | clustered | geometry")
      ->check(CLI::IsMember({"uniform", "clustered", "geometry"}));
  c_gend->add_option("--n", gd.n, "object count")->required();
  c_gend->add_option("--extent", gd.extent, "average per-axis extent");
  c_gend->add_option("--clusters", gd.clusters, "cluster count (clustered)");
  c_gend->add_option("--sigma", gd.sigma, "cluster spread (clustered)");
  c_gend->add_option("--seed", gd.seed, "RNG seed");
  c_gend->add_option("--output", gd.output, "output file")->required();

  // gen-workload
  GenWorkloadArgs gw;
  DataArgs gw_data;
  CLI::App* c_genw = app.add_subcommand("gen-workload", "generate a query workload");
  c_genw->add_option("--kind", gw.kind, "window | disk | knn")
      ->check(CLI::IsMember({"window", "disk", "knn"}));
  c_genw->add_option("--count", gw.count, "query count");
  c_genw->add_option("--area-ratio", gw.area_ratio,
                     "query area as a fraction of the domain area");
  c_genw->add_option("--k", gw.k, "neighbour count (knn)");
  c_genw->add_option("--seed", gw.seed, "RNG seed");
  c_genw->add_flag("--nonempty", gw.nonempty,
                   "centre queries inside random object MBRs (needs --data)");
  c_genw->add_option("--data", gw_data.path, "dataset for --nonempty placement");
  c_genw->add_option("--data-format", gw_data.format, "dataset format")
      ->check(CLI::IsMember({"mbr-csv", "wkt"}));
  c_genw->add_option("--output", gw.output, "output file")->required();

  // shared index options
  auto add_index_opts = [&](CLI::App* cmd, DataArgs& d, std::string& grid,
                            std::string& variant) {
    d.attach(cmd);
    cmd->add_option("--grid", grid, "tiles per axis, N or NxM")->required();
    cmd->add_option("--variant", variant, "1level | 2level | 2level+")
        ->check(variant_values());
  };

  // build
  DataArgs b_data;
  std::string b_grid, b_variant = "2level";
  double b_tail = 0.0;
  bool b_presort = false;
  CLI::App* c_build = app.add_subcommand("build", "build an index and report stats");
  add_index_opts(c_build, b_data, b_grid, b_variant);
  c_build->add_option("--insert-tail", b_tail,
                      "fraction of objects added one by one after the bulk build")
      ->check(CLI::Range(0.0, 1.0));
  c_build->add_flag("--presort", b_presort, "sort class groups for joins");

  // query
  DataArgs q_data;
  std::string q_grid, q_variant = "2level";
  QueryArgs qa;
  CLI::App* c_query = app.add_subcommand("query", "run a workload one query at a time");
  add_index_opts(c_query, q_data, q_grid, q_variant);
  c_query->add_option("--workload", qa.workload, "workload file (W/D lines)")->required();
  c_query->add_option("--mode", qa.mode,
                      "filter | simple | refavoid | refavoid+ (geometry datasets)")
      ->check(CLI::IsMember({"filter", "simple", "refavoid", "refavoid+"}));
  c_query->add_option("--dedup", qa.dedup, "1level window dedup: ref | hash")
      ->check(CLI::IsMember({"ref", "hash"}));
  c_query->add_flag("--oracle", qa.oracle, "verify against a linear scan");
  c_query->add_flag("--naive-disk-scan", qa.naive_disk_scan,
                    "per-tile distance tests instead of row intervals");
  c_query->add_option("--output", qa.output, "result ids per query");

  // batch
  DataArgs t_data;
  std::string t_grid, t_variant = "2level";
  BatchArgs ba;
  CLI::App* c_batch = app.add_subcommand("batch", "evaluate a workload in parallel");
  add_index_opts(c_batch, t_data, t_grid, t_variant);
  c_batch->add_option("--workload", ba.workload, "workload file (W/D lines)")->required();
  c_batch->add_option("--strategy", ba.strategy, "queries | tiles")
      ->check(CLI::IsMember({"queries", "tiles"}));
  c_batch->add_option("--threads", ba.threads,
                      "worker count (default: TILEGRID_THREADS or hardware)");
  c_batch->add_flag("--oracle", ba.oracle, "verify against one-at-a-time runs");
  c_batch->add_option("--output", ba.output, "result ids per query");

  // join
  JoinArgs ja;
  std::string j_grid, j_variant = "2level";
  CLI::App* c_join = app.add_subcommand("join", "all intersecting pairs of two datasets");
  ja.left.attach(c_join, "--left", "--left-format");
  ja.right.attach(c_join, "--right", "--right-format");
  c_join->add_option("--grid", j_grid, "tiles per axis, N or NxM")->required();
  c_join->add_option("--variant", j_variant, "2level | 2level+")
      ->check(variant_values());
  c_join->add_option("--threads", ja.threads, "worker count");
  c_join->add_flag("--audit", ja.audit,
                   "also evaluate the skipped class pairs and check containment");
  c_join->add_flag("--oracle", ja.oracle, "verify against a nested-loop join");
  c_join->add_option("--output", ja.output, "sorted 'left right' id pairs");

  // knn
  DataArgs k_data;
  std::string k_grid, k_variant = "2level";
  KnnArgs ka;
  CLI::App* c_knn = app.add_subcommand("knn", "k nearest MBRs per query point");
  add_index_opts(c_knn, k_data, k_grid, k_variant);
  c_knn->add_option("--workload", ka.workload, "workload file (K lines)")->required();
  c_knn->add_option("--count-mode", ka.count_mode,
                    "cell expansion counting: distinct | classa")
      ->check(CLI::IsMember({"distinct", "classa"}));
  c_knn->add_option("--threads", ka.threads, "worker count");
  c_knn->add_flag("--oracle", ka.oracle, "verify distances against a linear scan");
  c_knn->add_option("--output", ka.output, "neighbour ids per query");

  // bench
  DataArgs be_data;
  BenchArgs bea;
  CLI::App* c_bench = app.add_subcommand(
      "bench",
      "CSV sweep over variants and grid sizes; columns: variant,grid,build_ms,"
      "queries,wall_ms,avg_us_per_query,endpoint_comparisons,candidates,"
      "results,tiles_scanned,distance_computations");
  be_data.attach(c_bench);
  c_bench->add_option("--workload", bea.workload, "workload file (W/D lines)")->required();
  c_bench->add_option("--grids", bea.grids, "grid sizes to sweep");
  c_bench->add_option("--variants", bea.variants, "variants to sweep")
      ->check(variant_values());

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_ingest) return run_ingest(ingest_data, ingest_out, ingest_out_format);
    if (*c_gend) return run_gen_data(gd);
    if (*c_genw) return run_gen_workload(gw, &gw_data);
    if (*c_build)
      return run_build(b_data, parse_grid(b_grid), parse_variant(b_variant),
                       b_tail, b_presort);
    if (*c_query)
      return run_query(q_data, parse_grid(q_grid), parse_variant(q_variant), qa);
    if (*c_batch)
      return run_batch(t_data, parse_grid(t_grid), parse_variant(t_variant), ba);
    if (*c_join)
      return run_join(parse_grid(j_grid), parse_variant(j_variant), ja);
    if (*c_knn)
      return run_knn(k_data, parse_grid(k_grid), parse_variant(k_variant), ka);
    if (*c_bench) return run_bench(be_data, bea);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
