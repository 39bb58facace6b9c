// Command-line surface for the sparse-array robustness library: analyze,
// scan, sweep, generate, predict, doa-sim and weight-plot subcommands with
// text, JSON and CSV output.
//
// Exit codes: 0 success or PASS verdict, 1 essential pairs or subsets found,
// 2 usage or input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sparr/coarray.hpp"
#include "sparr/doasim.hpp"
#include "sparr/generators.hpp"
#include "sparr/geometry.hpp"
#include "sparr/prediction.hpp"
#include "sparr/redundancy.hpp"
#include "sparr/report.hpp"

namespace {

using nlohmann::json;

struct GeometryInput {
  std::string path;
  std::string family;
  long long n = 0;
  std::string name;
};

void add_geometry_options(CLI::App* cmd, GeometryInput& in) {
  auto* path = cmd->add_option("--geometry", in.path, "geometry file to load");
  auto* family =
      cmd->add_option("--family", in.family, "generator family: ula, 3fra, tra, named")
          ->check(CLI::IsMember({"ula", "3fra", "tra", "named"}));
  cmd->add_option("--n", in.n, "sensor count for the generator");
  cmd->add_option("--name", in.name, "identifier for --family named");
  path->excludes(family);
  family->excludes(path);
}

sparr::ArrayGeometry resolve_geometry(const GeometryInput& in) {
  if (!in.path.empty()) return sparr::parse_geometry_file(in.path);
  if (in.family == "ula") return sparr::gen_ula(static_cast<std::size_t>(in.n));
  if (in.family == "3fra") return sparr::gen_3fra(static_cast<std::size_t>(in.n));
  if (in.family == "tra") return sparr::gen_tra(static_cast<std::size_t>(in.n));
  if (in.family == "named") return sparr::named_demo_array(in.name);
  throw std::invalid_argument("no geometry given; use --geometry or --family");
}

json geometry_config(const GeometryInput& in, const sparr::ArrayGeometry& g) {
  json c;
  if (!in.path.empty()) {
    c["source"] = "file";
    c["path"] = in.path;
  } else {
    c["source"] = "generator";
    c["family"] = in.family;
    if (in.family == "named") {
      c["name"] = in.name;
    } else {
      c["n"] = in.n;
    }
  }
  c["positions"] = g.positions();
  return c;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write output file '" + path + "'");
  out << text;
}

void maybe_print_time(bool enabled, double elapsed_ms) {
  if (enabled) std::cerr << "elapsed_ms: " << elapsed_ms << "\n";
}

std::vector<double> parse_angles(const std::string& text) {
  std::vector<double> angles;
  if (text.find(':') != std::string::npos) {
    double start = 0;
    double step = 0;
    double stop = 0;
    char c1 = 0;
    char c2 = 0;
    std::istringstream iss(text);
    if (!(iss >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':' ||
        !iss.eof()) {
      throw std::invalid_argument("angle range must be start:step:stop, got '" + text + "'");
    }
    if (step <= 0) throw std::invalid_argument("angle range step must be positive");
    for (double a = start; a <= stop + 1e-9; a += step) angles.push_back(a);
  } else {
    std::string cleaned = text;
    for (char& c : cleaned) {
      if (c == ',') c = ' ';
    }
    std::istringstream iss(cleaned);
    double a = 0;
    while (iss >> a) angles.push_back(a);
  }
  if (angles.empty()) throw std::invalid_argument("no source angles in '" + text + "'");
  std::vector<double> sorted = angles;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] == sorted[i - 1]) {
      throw std::invalid_argument("source angles must be distinct");
    }
  }
  return angles;
}

std::string analyze_text(const sparr::ArrayGeometry& g, const sparr::RobustnessReport& r,
                         const sparr::CoarrayProfile& profile) {
  std::ostringstream out;
  out << "geometry: " << sparr::format_positions(g) << "\n";
  out << "N: " << r.n << "\n";
  out << "aperture: " << r.aperture << "\n";
  out << "hole_free: " << (profile.hole_free ? "yes" : "no") << "\n";
  if (!profile.hole_free) {
    out << "holes:";
    for (sparr::Position h : profile.holes) out << ' ' << h;
    out << "\n";
  }
  out << "u_max: " << profile.u_max << "\n";
  out << "udof: " << profile.udof << "\n";
  const sparr::WeightFunction w = sparr::weight_function(g);
  out << "terminal_weights: w(" << r.aperture << ")=" << w(r.aperture) << " w("
      << r.aperture - 1 << ")=" << w(r.aperture - 1) << "\n";
  out << "trsla_conformant: " << (r.trsla.conformant ? "yes" : "no");
  if (r.trsla.first_violation) out << " (first violating lag " << *r.trsla.first_violation << ")";
  out << "\n";
  out << "esp_count: " << r.esp_count << "\n";
  out << "essential_sensors:";
  if (r.essential_sensors.empty()) {
    out << " none";
  } else {
    for (sparr::Position s : r.essential_sensors) out << ' ' << s;
  }
  out << "\n";
  out << "scanned_pairs: " << r.scanned_pairs << "\n";
  out << "hesps:";
  if (r.hesps.empty()) {
    out << " none";
  } else {
    for (const auto& h : r.hesps) {
      out << " (" << h.pair.a << ',' << h.pair.b << ")";
      if (h.span_changed) {
        out << " span";
      } else {
        out << " holes=";
        for (std::size_t i = 0; i < h.holes.size(); ++i) {
          if (i) out << '+';
          out << h.holes[i];
        }
      }
    }
  }
  out << "\n";
  out << (r.pass ? "Array provides triple redundancy"
                 : "Array cannot provide triple redundancy")
      << "\n";
  return out.str();
}

std::set<std::vector<sparr::Position>> subsets_touching_extremes(const sparr::ArrayGeometry& g,
                                                                 std::size_t k) {
  // Every k-subset containing the first or last sensor trivially breaks the
  // span, so they are excluded up front, mirroring the pair scan's exclusion
  // of terminal pairs.
  std::set<std::vector<sparr::Position>> exclude;
  const auto& pos = g.positions();
  const std::size_t n = pos.size();
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  auto advance = [&]() -> bool {
    std::size_t i = k;
    while (i-- > 0) {
      if (idx[i] != i + n - k) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  do {
    if (idx.front() == 0 || idx.back() == n - 1) {
      std::vector<sparr::Position> subset(k);
      for (std::size_t i = 0; i < k; ++i) subset[i] = pos[idx[i]];
      exclude.insert(std::move(subset));
    }
  } while (advance());
  return exclude;
}

int cmd_analyze(const GeometryInput& in, unsigned workers, const std::string& format,
                bool show_time, const std::string& output) {
  const sparr::ArrayGeometry g = resolve_geometry(in);
  sparr::ScanOptions options;
  options.workers = workers;
  const sparr::RobustnessReport report = sparr::scan_two_failures(g, options);
  const sparr::CoarrayProfile profile = sparr::coarray_profile(g);
  if (format == "json") {
    json j = sparr::report_to_json(report);
    j["profile"] = {{"hole_free", profile.hole_free},
                    {"u_max", profile.u_max},
                    {"udof", profile.udof},
                    {"holes", profile.holes}};
    j["config"] = geometry_config(in, g);
    j["config"]["command"] = "analyze";
    j["config"]["workers"] = report.workers_used;
    write_output(j.dump(2) + "\n", output);
  } else {
    write_output(analyze_text(g, report, profile), output);
  }
  maybe_print_time(show_time, report.elapsed_ms);
  return report.pass ? 0 : 1;
}

int cmd_scan(const GeometryInput& in, std::size_t k, unsigned workers,
             const std::string& format, bool verify_excluded, bool allow_large,
             bool show_time, const std::string& output) {
  const sparr::ArrayGeometry g = resolve_geometry(in);
  sparr::ScanOptions options;
  options.workers = workers;
  options.verify_excluded = verify_excluded;
  options.allow_large = allow_large;
  if (k == 2) {
    const sparr::RobustnessReport report = sparr::scan_two_failures(g, options);
    if (format == "csv") {
      write_output(sparr::report_to_csv(report), output);
    } else {
      json j = sparr::report_to_json(report);
      j["config"] = geometry_config(in, g);
      j["config"]["command"] = "scan";
      j["config"]["k"] = 2;
      j["config"]["workers"] = report.workers_used;
      write_output(j.dump(2) + "\n", output);
    }
    maybe_print_time(show_time, report.elapsed_ms);
    return report.pass ? 0 : 1;
  }
  const auto t0 = std::chrono::steady_clock::now();
  const auto exclude = subsets_touching_extremes(g, k);
  const sparr::KScanResult result = sparr::scan_k_failures(g, k, exclude, options);
  const double elapsed =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  json j;
  j["schema_version"] = sparr::kSchemaVersion;
  j["k"] = k;
  j["scanned"] = result.scanned;
  json subsets = json::array();
  for (const auto& rec : result.essential_subsets) {
    subsets.push_back(
        {{"subset", rec.subset}, {"holes", rec.holes}, {"span_changed", rec.span_changed}});
  }
  j["essential_subsets"] = subsets;
  j["elapsed_ms"] = elapsed;
  j["config"] = geometry_config(in, g);
  j["config"]["command"] = "scan";
  j["config"]["k"] = k;
  write_output(j.dump(2) + "\n", output);
  maybe_print_time(show_time, elapsed);
  return result.essential_subsets.empty() ? 0 : 1;
}

int cmd_sweep(const std::string& family, long long from, long long to,
              const std::string& format, unsigned workers, bool show_time,
              const std::string& output) {
  if (from > to) throw std::invalid_argument("--from must not exceed --to");
  const auto t0 = std::chrono::steady_clock::now();
  sparr::ScanOptions options;
  options.workers = workers;
  std::vector<sparr::SweepRow> rows;
  for (long long n = from; n <= to; ++n) {
    const sparr::ArrayGeometry g = (family == "3fra")
                                       ? sparr::gen_3fra(static_cast<std::size_t>(n))
                                       : sparr::gen_tra(static_cast<std::size_t>(n));
    sparr::RobustnessReport report = sparr::scan_two_failures(g, options);
    rows.push_back({static_cast<std::size_t>(n), g.aperture(), std::move(report.hesps)});
  }
  const double elapsed =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (format == "json") {
    json j;
    j["schema_version"] = sparr::kSchemaVersion;
    j["config"] = {{"command", "sweep"}, {"family", family}, {"from", from}, {"to", to}};
    j["rows"] = sparr::sweep_to_json(rows);
    j["elapsed_ms"] = elapsed;
    write_output(j.dump(2) + "\n", output);
  } else {
    write_output(sparr::sweep_to_csv(rows), output);
  }
  maybe_print_time(show_time, elapsed);
  return 0;
}

int cmd_generate(const GeometryInput& in, const std::string& output) {
  if (in.family.empty()) throw std::invalid_argument("generate requires --family");
  const sparr::ArrayGeometry g = resolve_geometry(in);
  std::ostringstream out;
  out << "# " << in.family;
  if (in.family == "named") {
    out << ' ' << in.name;
  } else {
    out << " n=" << in.n;
  }
  out << "\n" << sparr::format_positions(g) << "\n";
  write_output(out.str(), output);
  return 0;
}

int cmd_predict(const std::string& family, long long n, const std::string& format,
                const std::string& output) {
  const std::size_t count = static_cast<std::size_t>(n);
  const sparr::ArrayGeometry g =
      (family == "3fra") ? sparr::gen_3fra(count) : sparr::gen_tra(count);
  const sparr::VulnerabilityPrediction p = (family == "3fra")
                                               ? sparr::predict_3fra(count, g.aperture())
                                               : sparr::predict_tra(count, g.aperture());
  if (format == "text") {
    std::ostringstream out;
    out << "family: " << family << "\n";
    out << "N: " << n << "\n";
    out << "L: " << g.aperture() << "\n";
    out << "k: " << p.k << "\n";
    out << "i: " << p.i << "\n";
    out << "vulnerable: " << (p.vulnerable ? "yes" : "no") << "\n";
    out << "predicted_hesps:";
    if (p.predicted_hesps.empty()) {
      out << " none";
    } else {
      for (const auto& pair : p.predicted_hesps) out << " (" << pair.a << ',' << pair.b << ')';
    }
    out << "\n";
    write_output(out.str(), output);
  } else {
    json j;
    j["schema_version"] = sparr::kSchemaVersion;
    j["config"] = {{"command", "predict"}, {"family", family}, {"n", n}};
    j["L"] = g.aperture();
    j["k"] = p.k;
    j["i"] = p.i;
    j["vulnerable"] = p.vulnerable;
    j["predicted_hesps"] = sparr::pairs_to_json(p.predicted_hesps);
    j["predicted_holes"] = p.predicted_holes;
    write_output(j.dump(2) + "\n", output);
  }
  return 0;
}

int cmd_doa_sim(const std::string& geometry_arg, const std::string& angles_text, double snr,
                long long snapshots, long long seed, double grid_step, double tolerance,
                bool noiseless, const std::string& spectrum_csv, const std::string& output) {
  sparr::DoaScenario sc{[&] {
                          std::ifstream probe(geometry_arg);
                          if (probe) return sparr::parse_geometry_file(geometry_arg);
                          return sparr::named_demo_array(geometry_arg);
                        }(),
                        parse_angles(angles_text),
                        snr,
                        static_cast<std::size_t>(snapshots),
                        static_cast<std::uint64_t>(seed),
                        noiseless};
  const sparr::DoaRunResult result = sparr::run_doa_simulation(sc, grid_step, tolerance);
  if (!spectrum_csv.empty()) {
    std::ostringstream out;
    out << "angle,value\n";
    for (std::size_t i = 0; i < result.spectrum.grid.size(); ++i) {
      out << result.spectrum.grid[i] << ',' << result.spectrum.values[i] << '\n';
    }
    write_output(out.str(), spectrum_csv);
  }
  json j;
  j["schema_version"] = sparr::kSchemaVersion;
  j["config"] = {{"command", "doa-sim"},
                 {"geometry", geometry_arg},
                 {"positions", sc.geometry.positions()},
                 {"angles", sc.source_angles_deg},
                 {"snr_db", snr},
                 {"snapshots", snapshots},
                 {"seed", seed},
                 {"grid_step", grid_step},
                 {"tolerance", tolerance},
                 {"noiseless", noiseless}};
  j["u_max"] = result.u_max;
  j["smoothed_dim"] = result.smoothed_dim;
  j["estimates"] = result.estimate.angles;
  j["rmse"] = result.estimate.rmse;
  j["resolved_count"] = result.estimate.resolved_count;
  write_output(j.dump(2) + "\n", output);
  return 0;
}

int cmd_weight_plot(const GeometryInput& in, const std::string& remove_text,
                    const std::string& output) {
  sparr::ArrayGeometry g = resolve_geometry(in);
  if (!remove_text.empty()) {
    std::string cleaned = remove_text;
    for (char& c : cleaned) {
      if (c == ',') c = ' ';
    }
    std::istringstream iss(cleaned);
    sparr::Position a = 0;
    sparr::Position b = 0;
    if (!(iss >> a >> b)) {
      throw std::invalid_argument("--remove expects two positions, got '" + remove_text + "'");
    }
    g = g.remove_sensors({a, b});
  }
  write_output(sparr::weight_plot_csv(sparr::weight_function(g)), output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse linear array robustness toolkit"};
  app.require_subcommand(1);

  GeometryInput geo;
  unsigned workers = 0;
  std::string format;
  std::string output;
  bool show_time = false;

  auto* analyze = app.add_subcommand("analyze", "full robustness analysis with verdict");
  add_geometry_options(analyze, geo);
  analyze->add_option("--workers", workers, "scan worker threads (default: SPARR_WORKERS or hardware)");
  analyze->add_option("--format", format, "text or json (default text)")
      ->check(CLI::IsMember({"text", "json"}));
  analyze->add_option("--output", output, "write to file instead of stdout");
  analyze->add_flag("--time", show_time, "print scan wall time to stderr");

  std::size_t scan_k = 2;
  bool verify_excluded = false;
  bool allow_large = false;
  auto* scan = app.add_subcommand("scan", "exhaustive k-failure scan (default k=2)");
  add_geometry_options(scan, geo);
  scan->add_option("--k", scan_k, "failure subset size");
  scan->add_option("--workers", workers, "scan worker threads");
  scan->add_option("--format", format, "json or csv (default json)")
      ->check(CLI::IsMember({"json", "csv"}));
  scan->add_option("--output", output, "write to file instead of stdout");
  scan->add_flag("--verify-excluded", verify_excluded,
                 "also check that every excluded pair breaks the coarray");
  scan->add_flag("--allow-large", allow_large, "lift the N > 5000 guard");
  scan->add_flag("--time", show_time, "print scan wall time to stderr");

  std::string sweep_family;
  long long sweep_from = 0;
  long long sweep_to = 0;
  auto* sweep = app.add_subcommand("sweep", "scan a generator family over a range of N");
  sweep->add_option("--family", sweep_family, "3fra or tra")
      ->required()
      ->check(CLI::IsMember({"3fra", "tra"}));
  sweep->add_option("--from", sweep_from, "first N")->required();
  sweep->add_option("--to", sweep_to, "last N")->required();
  sweep->add_option("--format", format, "csv or json (default csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--workers", workers, "scan worker threads");
  sweep->add_option("--output", output, "write to file instead of stdout");
  sweep->add_flag("--time", show_time, "print total wall time to stderr");

  auto* generate = app.add_subcommand("generate", "emit a geometry file");
  add_geometry_options(generate, geo);
  generate->add_option("--output", output, "write to file instead of stdout");

  std::string predict_family;
  long long predict_n = 0;
  auto* predict = app.add_subcommand("predict", "closed-form vulnerability prediction");
  predict->add_option("--family", predict_family, "3fra or tra")
      ->required()
      ->check(CLI::IsMember({"3fra", "tra"}));
  predict->add_option("--n", predict_n, "sensor count")->required();
  predict->add_option("--format", format, "json or text (default json)")
      ->check(CLI::IsMember({"json", "text"}));
  predict->add_option("--output", output, "write to file instead of stdout");

  std::string doa_geometry;
  std::string doa_angles = "-21:7:21";
  double doa_snr = 0.0;
  long long doa_snapshots = 500;
  long long doa_seed = 1;
  double doa_grid_step = 0.1;
  double doa_tolerance = 2.0;
  bool doa_noiseless = false;
  std::string doa_spectrum_csv;
  auto* doa = app.add_subcommand("doa-sim", "coarray-MUSIC direction finding simulation");
  doa->add_option("--geometry", doa_geometry, "geometry file path or named array id")
      ->required();
  doa->add_option("--angles", doa_angles, "source angles, start:step:stop or comma list");
  doa->add_option("--snr", doa_snr, "per-sensor SNR in dB (default 0)");
  doa->add_option("--snapshots", doa_snapshots, "snapshot count (default 500)");
  doa->add_option("--seed", doa_seed, "noise seed (default 1)");
  doa->add_option("--grid-step", doa_grid_step, "spectrum grid step in degrees (default 0.1)");
  doa->add_option("--tolerance", doa_tolerance, "peak match tolerance in degrees (default 2)");
  doa->add_flag("--noiseless", doa_noiseless, "disable the noise term");
  doa->add_option("--spectrum-csv", doa_spectrum_csv, "also dump the spectrum as CSV");
  doa->add_option("--output", output, "write to file instead of stdout");

  std::string remove_text;
  auto* weight_plot = app.add_subcommand("weight-plot", "two-column lag,weight CSV");
  add_geometry_options(weight_plot, geo);
  weight_plot->add_option("--remove", remove_text, "pair a,b to remove before plotting");
  weight_plot->add_option("--output", output, "write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(analyze)) {
      return cmd_analyze(geo, workers, format.empty() ? "text" : format, show_time, output);
    }
    if (app.got_subcommand(scan)) {
      return cmd_scan(geo, scan_k, workers, format.empty() ? "json" : format, verify_excluded,
                      allow_large, show_time, output);
    }
    if (app.got_subcommand(sweep)) {
      return cmd_sweep(sweep_family, sweep_from, sweep_to, format.empty() ? "csv" : format,
                       workers, show_time, output);
    }
    if (app.got_subcommand(generate)) {
      return cmd_generate(geo, output);
    }
    if (app.got_subcommand(predict)) {
      return cmd_predict(predict_family, predict_n, format.empty() ? "json" : format, output);
    }
    if (app.got_subcommand(doa)) {
      return cmd_doa_sim(doa_geometry, doa_angles, doa_snr, doa_snapshots, doa_seed,
                         doa_grid_step, doa_tolerance, doa_noiseless, doa_spectrum_csv, output);
    }
    if (app.got_subcommand(weight_plot)) {
      return cmd_weight_plot(geo, remove_text, output);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
