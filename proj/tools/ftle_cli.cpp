// Command-line front end: mesh/fixture generation, neighbor precomputation,
// FTLE field computation, and the analytic throughput/bandwidth models.
//
// Exit codes: 0 success, 1 validation failure, 2 I/O or format failure.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ftle/generate.hpp"
#include "ftle/io.hpp"
#include "ftle/kernel.hpp"
#include "ftle/mesh.hpp"
#include "ftle/perf_model.hpp"
#include "ftle/pipeline.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kArtifactVersion = "1.0.0";

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

// Run manifest emitted on stdout for every file-producing subcommand.
struct ManifestBuilder {
  json manifest;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  explicit ManifestBuilder(const std::string& subcommand) {
    manifest["subcommand"] = subcommand;
    manifest["artifact_version"] = kArtifactVersion;
    manifest["inputs"] = json::object();
    manifest["parameters"] = json::object();
    manifest["outputs"] = json::object();
  }
  void input(const std::string& key, const std::string& path) {
    manifest["inputs"][key] = path;
  }
  void param(const std::string& key, const json& value) {
    manifest["parameters"][key] = value;
  }
  void output(const std::string& path) {
    manifest["outputs"][path] = hex64(ftle::file_checksum(path));
  }
  void emit() {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    manifest["duration_s"] = std::chrono::duration<double>(elapsed).count();
    std::cout << manifest.dump(2) << "\n";
  }
};

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("FTLE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

// ---- report formatting ------------------------------------------------------

void print_table(std::ostream& os, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c >= width.size()) width.push_back(0);
      width[c] = std::max(width[c], row[c].size());
    }
  }
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << std::left << std::setw(static_cast<int>(width[c]) + 2) << row[c];
    }
    os << "\n";
  }
}

void print_csv(std::ostream& os, const std::vector<std::vector<std::string>>& rows) {
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ',';
      os << row[c];
    }
    os << "\n";
  }
}

std::string fmt1(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << v;
  return os.str();
}

void emit_rows(const std::vector<std::vector<std::string>>& rows, const std::string& format) {
  if (format == "csv") {
    print_csv(std::cout, rows);
  } else {
    print_table(std::cout, rows);
  }
}

// ---- subcommand bodies ------------------------------------------------------

void run_gen(const std::string& kind, int dim, std::int64_t n, const std::string& flow,
             const std::vector<double>& a_matrix, std::uint64_t seed,
             const std::string& out_prefix, bool csv) {
  ManifestBuilder mb("gen");
  mb.param("kind", kind);
  mb.param("dim", dim);
  mb.param("n", n);
  mb.param("flow", flow);
  mb.param("seed", seed);
  std::mt19937_64 rng(seed);
  ftle::SimplicialMesh mesh = kind == "grid" ? ftle::generate_grid_mesh(dim, n)
                                             : ftle::generate_random_mesh(dim, n, rng);
  mesh.validate();
  ftle::FlowMap fm = ftle::generate_flow(mesh, flow, a_matrix, rng);
  const std::string ext = csv ? ".csv" : ".bin";
  const std::string coords_path = out_prefix + ".coords" + ext;
  const std::string faces_path = out_prefix + ".faces" + ext;
  const std::string flowmap_path = out_prefix + ".flowmap" + ext;
  ftle::save_coords(coords_path, mesh);
  ftle::save_faces(faces_path, mesh);
  ftle::save_flowmap(flowmap_path, fm);
  mb.output(coords_path);
  mb.output(faces_path);
  mb.output(flowmap_path);
  mb.emit();
}

void run_neighbors(const std::string& coords_path, const std::string& faces_path,
                   const std::string& out_path) {
  ManifestBuilder mb("neighbors");
  mb.input("coords", coords_path);
  mb.input("faces", faces_path);
  const ftle::SimplicialMesh mesh = ftle::load_mesh(coords_path, faces_path);
  if (mesh.n_faces == 0) {
    std::cerr << "warning: mesh has no faces, all neighbor entries will be -1\n";
  }
  const ftle::NeighborList nl = ftle::precompute_neighbors(mesh);
  ftle::save_neighbors(out_path, nl);
  mb.output(out_path);

  json stats = json::array();
  static const char* axis_names[] = {"x", "y", "z"};
  for (int axis = 0; axis < nl.dim; ++axis) {
    std::int64_t missing_minus = 0;
    std::int64_t missing_plus = 0;
    for (std::int64_t p = 0; p < nl.n_points; ++p) {
      if (nl.entry(p, axis, 0) == ftle::NeighborList::kAbsent) ++missing_minus;
      if (nl.entry(p, axis, 1) == ftle::NeighborList::kAbsent) ++missing_plus;
    }
    stats.push_back({{"axis", axis_names[axis]},
                     {"missing_minus", missing_minus},
                     {"missing_plus", missing_plus},
                     {"points", nl.n_points}});
  }
  mb.manifest["missing_neighbor_stats"] = stats;
  mb.emit();
}

void run_ftle(const std::string& coords_path, const std::string& faces_path,
              const std::string& flowmap_path, const std::string& neighbors_path,
              double t_horizon, const std::string& mode, int threads,
              const std::string& out_path) {
  ManifestBuilder mb("ftle");
  mb.input("coords", coords_path);
  mb.input("faces", faces_path);
  mb.input("flowmap", flowmap_path);
  mb.param("t_horizon", t_horizon);
  mb.param("mode", mode);
  mb.param("threads", threads);
  const ftle::SimplicialMesh mesh = ftle::load_mesh(coords_path, faces_path);
  const ftle::FlowMap fm = ftle::load_flowmap(flowmap_path, t_horizon);
  ftle::FtleField field;
  if (mode == "naive") {
    field = ftle::compute_ftle_naive(mesh, fm, threads);
  } else if (mode == "decoupled") {
    ftle::NeighborList nl;
    if (neighbors_path.empty()) {
      std::cerr << "warning: no neighbor file given, precomputing on the fly\n";
      nl = ftle::precompute_neighbors(mesh);
    } else {
      mb.input("neighbors", neighbors_path);
      nl = ftle::load_neighbors(neighbors_path);
      const auto violations = ftle::validate_neighbor_list(mesh, nl);
      if (!violations.empty()) {
        throw ftle::ValidationError("neighbor list invalid: " + violations.front());
      }
    }
    field = ftle::compute_ftle_decoupled(mesh, fm, nl, threads);
  } else {
    throw ftle::ValidationError("mode must be 'decoupled' or 'naive'");
  }
  ftle::save_field(out_path, mesh.dim, field.values);
  mb.output(out_path);

  double lo = 0.0, hi = 0.0, sum = 0.0;
  std::int64_t finite = 0;
  for (double v : field.values) {
    if (!std::isfinite(v)) continue;
    if (finite == 0) lo = hi = v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    sum += v;
    ++finite;
  }
  mb.manifest["field_stats"] = {{"finite", finite},
                                {"min", finite ? lo : 0.0},
                                {"max", finite ? hi : 0.0},
                                {"mean", finite ? sum / finite : 0.0}};
  mb.emit();
}

void run_model_table1(const std::string& format) {
  const auto& r2 = ftle::synthesis_reference(2);
  const auto& r3 = ftle::synthesis_reference(3);
  const auto bw2 = ftle::required_bandwidth(r2.data_bits_per_cycle, r2.index_bits_per_cycle,
                                            r2.max_freq_mhz * 1e6);
  const auto bw3 = ftle::required_bandwidth(r3.data_bits_per_cycle, r3.index_bits_per_cycle,
                                            r3.max_freq_mhz * 1e6);
  const auto bw2_300 =
      ftle::required_bandwidth(r2.data_bits_per_cycle, r2.index_bits_per_cycle, 300e6);
  const auto bw3_300 =
      ftle::required_bandwidth(r3.data_bits_per_cycle, r3.index_bits_per_cycle, 300e6);
  if (format == "json") {
    json doc;
    for (const auto* r : {&r2, &r3}) {
      json entry = {{"max_freq_mhz", r->max_freq_mhz},
                    {"latency_cycles", r->latency_cycles},
                    {"data_bits_per_cycle", r->data_bits_per_cycle},
                    {"index_bits_per_cycle", r->index_bits_per_cycle},
                    {"lut", r->lut},
                    {"lutram", r->lutram},
                    {"ff", r->ff},
                    {"dsp", r->dsp},
                    {"bram", r->bram},
                    {"power_w", r->power_w},
                    {"resource_rows", "reported, not computed"}};
      const auto& bw = r->dim == 2 ? bw2 : bw3;
      const auto& bw300 = r->dim == 2 ? bw2_300 : bw3_300;
      entry["bandwidth_max_freq_gbps"] = {{"data", bw.data_gbps}, {"index", bw.index_gbps}};
      entry["bandwidth_300mhz_gbps"] = {{"data", bw300.data_gbps}, {"index", bw300.index_gbps}};
      doc[r->dim == 2 ? "2d" : "3d"] = entry;
    }
    std::cout << doc.dump(2) << "\n";
    return;
  }
  auto pair = [](const ftle::BandwidthRequirement& bw) {
    return fmt1(bw.data_gbps) + "+" + fmt1(bw.index_gbps);
  };
  std::vector<std::vector<std::string>> rows = {
      {"", "2D", "3D", ""},
      {"Max Freq (MHz)", fmt1(r2.max_freq_mhz), fmt1(r3.max_freq_mhz), "reported"},
      {"Latency / cycles", std::to_string(r2.latency_cycles), std::to_string(r3.latency_cycles),
       "reported"},
      {"Input bandwidth (bits/cycle)",
       std::to_string(r2.data_bits_per_cycle) + "+" + std::to_string(r2.index_bits_per_cycle),
       std::to_string(r3.data_bits_per_cycle) + "+" + std::to_string(r3.index_bits_per_cycle),
       "reported"},
      {"Input bandwidth for max freq (GB/s)", pair(bw2), pair(bw3), "computed"},
      {"Input bandwidth for 300 MHz (GB/s)", pair(bw2_300), pair(bw3_300), "computed"},
      {"LUT", std::to_string(r2.lut), std::to_string(r3.lut), "reported, not computed"},
      {"LUTRAM", std::to_string(r2.lutram), std::to_string(r3.lutram), "reported, not computed"},
      {"FF", std::to_string(r2.ff), std::to_string(r3.ff), "reported, not computed"},
      {"DSP", std::to_string(r2.dsp), std::to_string(r3.dsp), "reported, not computed"},
      {"BRAM", std::to_string(r2.bram), std::to_string(r3.bram), "reported, not computed"},
      {"Power (W)", fmt1(r2.power_w), fmt1(r3.power_w), "reported, not computed"},
  };
  emit_rows(rows, format);
}

void run_model_table2(const std::string& format) {
  const ftle::FeasibilityTable table = ftle::feasibility_table();
  const auto& catalog = ftle::memory_tech_catalog();
  if (format == "json") {
    json doc;
    doc["scenarios"] = json::array();
    for (const auto& s : ftle::bandwidth_scenarios()) {
      doc["scenarios"].push_back({{"name", s.name}, {"desired_gbps", s.desired_gbps}});
    }
    doc["rows"] = json::array();
    for (std::size_t t = 0; t < table.tech_names.size(); ++t) {
      json row = {{"tech", table.tech_names[t]}, {"absolute_gbps", catalog[t].peak_gbps}};
      json cells = json::array();
      for (const auto& cell : table.cells[t]) {
        json c = {{"percent", cell.percent}};
        if (cell.known_erratum) {
          c["known_erratum"] = true;
          c["published_percent"] = cell.published_percent;
        }
        cells.push_back(c);
      }
      row["cells"] = cells;
      doc["rows"].push_back(row);
    }
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"", "Absolute BW"};
  for (const auto& name : table.scenario_names) header.push_back(name);
  rows.push_back(header);
  std::vector<std::string> desired = {"Desired bandwidth", ""};
  for (const auto& s : ftle::bandwidth_scenarios()) {
    desired.push_back(fmt1(s.desired_gbps) + " (100%)");
  }
  rows.push_back(desired);
  bool any_erratum = false;
  for (std::size_t t = 0; t < table.tech_names.size(); ++t) {
    std::vector<std::string> row = {table.tech_names[t], fmt1(catalog[t].peak_gbps)};
    for (const auto& cell : table.cells[t]) {
      std::string text = std::to_string(cell.percent) + "%";
      if (cell.known_erratum) {
        text += "*";
        any_erratum = true;
      }
      row.push_back(text);
    }
    rows.push_back(row);
  }
  emit_rows(rows, format);
  if (any_erratum) {
    std::cout << "* known erratum: source prints 59% here; the arithmetic gives 42%\n";
  }
}

void run_model_flops(const std::string& format) {
  json doc = json::array();
  for (int dim : {2, 3}) {
    const ftle::FlopAudit audit = ftle::audit_flops(dim);
    const double derived = ftle::derived_flops_per_point(dim);
    json entry = {{"dim", dim},
                  {"counted_flops_per_point", audit.total()},
                  {"adds", audit.adds},
                  {"subs", audit.subs},
                  {"muls", audit.muls},
                  {"divs", audit.divs},
                  {"sqrts", audit.sqrts},
                  {"logs", audit.logs},
                  {"acoss", audit.acoss},
                  {"coss", audit.coss},
                  {"derived_flops_per_point", derived},
                  {"derived_note", "derived from published GFLOPS totals, not measured"}};
    doc.push_back(entry);
  }
  if (format == "json") {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::vector<std::vector<std::string>> rows = {
      {"dim", "counted flops/point", "derived flops/point (from published totals)"}};
  for (const auto& entry : doc) {
    rows.push_back({std::to_string(entry["dim"].get<int>()),
                    std::to_string(entry["counted_flops_per_point"].get<long>()),
                    fmt1(entry["derived_flops_per_point"].get<double>())});
  }
  emit_rows(rows, format);
}

void run_simulate(int dim, double freq_hz, int ii, const std::string& mem_name,
                  double peak_gbps, double efficiency, int data_bits, int index_bits,
                  double n_points, const std::string& format) {
  ftle::AcceleratorConfig cfg = ftle::AcceleratorConfig::defaults(dim);
  if (freq_hz > 0.0) cfg.freq_hz = freq_hz;
  if (ii > 0) cfg.ii = ii;
  if (data_bits > 0) cfg.data_bits_per_point = data_bits;
  if (index_bits > 0) cfg.index_bits_per_point = index_bits;

  ftle::MemorySystem mem;
  mem.pattern_efficiency = efficiency;
  if (!mem_name.empty()) {
    const ftle::MemoryTech& tech = ftle::find_memory_tech(mem_name);
    mem.name = tech.name;
    mem.peak_bytes_per_sec = tech.peak_gbps * 1e9;
  } else {
    mem.name = "custom";
    mem.peak_bytes_per_sec = peak_gbps * 1e9;
  }

  const ftle::PipelinedThroughput pt = ftle::pipelined_throughput(cfg, mem);
  json doc = {{"dim", cfg.dim},
              {"freq_hz", cfg.freq_hz},
              {"ii", cfg.ii},
              {"memory", mem.name},
              {"effective_bandwidth_gbps", mem.effective_bytes_per_sec() / 1e9},
              {"bytes_per_point", cfg.bytes_per_point()},
              {"rate", pt.points_per_sec},
              {"bound", ftle::to_string(pt.bound)},
              {"cycles_per_point", pt.cycles_per_point},
              {"note", "naive model assumes one read per bank per cycle"}};
  if (n_points > 0.0) {
    doc["estimated_runtime_s"] =
        ftle::estimate_runtime(n_points, pt.points_per_sec, cfg.latency_cycles, cfg.freq_hz);
  }
  if (format == "text") {
    std::cout << "rate: " << pt.points_per_sec << " points/s (" << ftle::to_string(pt.bound)
              << "-bound), " << pt.cycles_per_point << " cycles/point\n";
    if (doc.contains("estimated_runtime_s")) {
      std::cout << "estimated runtime: " << doc["estimated_runtime_s"].get<double>() << " s\n";
    }
  } else {
    std::cout << doc.dump(2) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decoupled FTLE pipeline: neighbor precomputation, streaming FTLE kernel, "
               "and analytic bandwidth/throughput models"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate mesh/flow-map fixture files");
  std::string gen_kind = "grid";
  int gen_dim = 2;
  std::int64_t gen_n = 9;
  std::string gen_flow = "identity";
  std::string gen_a;
  std::uint64_t gen_seed = 1;
  std::string gen_prefix = "fixture";
  bool gen_csv = false;
  gen->add_option("--kind", gen_kind, "grid|random")->check(CLI::IsMember({"grid", "random"}));
  gen->add_option("--dim", gen_dim, "2 or 3")->check(CLI::IsMember({2, 3}));
  gen->add_option("--n", gen_n, "point count")->check(CLI::PositiveNumber);
  gen->add_option("--flow", gen_flow, "identity|linear|random")
      ->check(CLI::IsMember({"identity", "linear", "random"}));
  gen->add_option("--A", gen_a, "row-major dim*dim matrix for --flow linear, comma-separated");
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--out-prefix", gen_prefix, "output file prefix");
  gen->add_flag("--csv", gen_csv, "write CSV instead of binary");

  // neighbors
  auto* neighbors = app.add_subcommand("neighbors", "Precompute the axis neighbor list");
  std::string nb_coords, nb_faces, nb_out;
  neighbors->add_option("--coords", nb_coords, "coords file")->required();
  neighbors->add_option("--faces", nb_faces, "faces file")->required();
  neighbors->add_option("--out", nb_out, "output neighbor file")->required();

  // ftle
  auto* ftle_cmd = app.add_subcommand("ftle", "Compute the FTLE field");
  std::string ft_coords, ft_faces, ft_flowmap, ft_neighbors, ft_out;
  std::string ft_mode = "decoupled";
  double ft_t = 1.0;
  int ft_threads = 0;
  ftle_cmd->add_option("--coords", ft_coords, "coords file")->required();
  ftle_cmd->add_option("--faces", ft_faces, "faces file")->required();
  ftle_cmd->add_option("--flowmap", ft_flowmap, "flow-map file")->required();
  ftle_cmd->add_option("--neighbors", ft_neighbors, "neighbor file (decoupled mode)");
  ftle_cmd->add_option("--t", ft_t, "integration horizon T (nonzero)");
  ftle_cmd->add_option("--mode", ft_mode, "decoupled|naive")
      ->check(CLI::IsMember({"decoupled", "naive"}));
  ftle_cmd->add_option("--threads", ft_threads, "worker threads (or FTLE_THREADS env)");
  ftle_cmd->add_option("--out", ft_out, "output field file")->required();

  // model
  auto* model = app.add_subcommand("model", "Reproduce the analytic model tables");
  std::string model_table;
  std::string model_format = "text";
  model->add_option("table", model_table, "1|2|flops")
      ->required()
      ->check(CLI::IsMember({"1", "2", "flops"}));
  model->add_option("--format", model_format, "text|csv|json")
      ->check(CLI::IsMember({"text", "csv", "json"}));

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Predict streaming-core throughput");
  int sim_dim = 2;
  double sim_freq = 0.0;
  int sim_ii = 0;
  std::string sim_mem;
  double sim_peak = 0.0;
  double sim_eff = 1.0;
  int sim_data_bits = 0, sim_index_bits = 0;
  double sim_n_points = 0.0;
  std::string sim_format = "json";
  simulate->add_option("--dim", sim_dim, "2 or 3")->check(CLI::IsMember({2, 3}));
  simulate->add_option("--freq", sim_freq, "clock frequency in Hz (default: dim preset)");
  simulate->add_option("--ii", sim_ii, "initiation interval override");
  simulate->add_option("--mem", sim_mem, "memory tech catalog name");
  simulate->add_option("--peak-gbps", sim_peak, "custom peak bandwidth (GB/s)");
  simulate->add_option("--efficiency", sim_eff, "access-pattern efficiency in (0,1]");
  simulate->add_option("--data-bits", sim_data_bits, "data bits per point override");
  simulate->add_option("--index-bits", sim_index_bits, "index bits per point override");
  simulate->add_option("--n-points", sim_n_points, "also estimate runtime for this many points");
  simulate->add_option("--format", sim_format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      std::vector<double> a_matrix;
      if (!gen_a.empty()) {
        std::stringstream ss(gen_a);
        std::string field;
        while (std::getline(ss, field, ',')) a_matrix.push_back(std::stod(field));
      }
      run_gen(gen_kind, gen_dim, gen_n, gen_flow, a_matrix, gen_seed, gen_prefix, gen_csv);
    } else if (neighbors->parsed()) {
      run_neighbors(nb_coords, nb_faces, nb_out);
    } else if (ftle_cmd->parsed()) {
      run_ftle(ft_coords, ft_faces, ft_flowmap, ft_neighbors, ft_t, ft_mode,
               resolve_threads(ft_threads), ft_out);
    } else if (model->parsed()) {
      if (model_table == "1") {
        run_model_table1(model_format);
      } else if (model_table == "2") {
        run_model_table2(model_format);
      } else {
        run_model_flops(model_format);
      }
    } else if (simulate->parsed()) {
      if (sim_mem.empty() && sim_peak <= 0.0) {
        throw ftle::ValidationError("simulate needs --mem or --peak-gbps");
      }
      run_simulate(sim_dim, sim_freq, sim_ii, sim_mem, sim_peak, sim_eff, sim_data_bits,
                   sim_index_bits, sim_n_points, sim_format);
    }
  } catch (const ftle::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ftle::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
