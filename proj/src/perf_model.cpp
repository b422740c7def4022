#include "ftle/perf_model.hpp"

#include <cmath>

#include "ftle/kernel_math.hpp"

namespace ftle {

const std::vector<MemoryTech>& memory_tech_catalog() {
  static const std::vector<MemoryTech> catalog = {
      {"1ch-ddr4-2400", "1 channel DDR4-2400", 19.2},
      {"1ch-ddr4-2666", "1 channel DDR4-2666", 21.3},
      {"2ch-ddr4-2400", "2 channel DDR4-2400", 38.4},
      {"2ch-ddr4-2666", "2 channel DDR4-2666", 42.6},
      {"4ch-ddr4-2400", "4 channel DDR4-2400", 76.8},
      {"1-hbm-stack", "1 stack HBM", 230.0},
      {"2-hbm-stacks", "2 stack HBM", 460.0},
  };
  return catalog;
}

const MemoryTech& find_memory_tech(const std::string& name) {
  for (const auto& tech : memory_tech_catalog()) {
    if (tech.name == name) return tech;
  }
  std::string known;
  for (const auto& tech : memory_tech_catalog()) {
    known += known.empty() ? tech.name : ", " + tech.name;
  }
  throw ValidationError("unknown memory tech '" + name + "' (known: " + known + ")");
}

const SynthesisReference& synthesis_reference(int dim) {
  // Reported constants; only the bit widths and frequency feed calculations.
  static const SynthesisReference ref2d = {2, 500.0, 264, 768, 128,
                                           29323, 1797, 49677, 250, 0, 8.1};
  static const SynthesisReference ref3d = {3, 357.0, 421, 1152, 192,
                                           134519, 5679, 139912, 1012, 1, 21.17};
  if (dim == 2) return ref2d;
  if (dim == 3) return ref3d;
  throw ValidationError("dim must be 2 or 3");
}

BandwidthRequirement required_bandwidth(int data_bits, int index_bits, double freq_hz) {
  if (data_bits <= 0 || index_bits <= 0 || freq_hz <= 0.0) {
    throw ValidationError("bandwidth inputs must be positive");
  }
  // GB = 1e9 bytes throughout.
  return {data_bits * freq_hz / 8.0 / 1e9, index_bits * freq_hz / 8.0 / 1e9};
}

const std::array<BandwidthScenario, 4>& bandwidth_scenarios() {
  static const std::array<BandwidthScenario, 4> scenarios = {{
      {"2D max freq", 2, 500e6, 56.0},
      {"3D max freq", 3, 357e6, 60.0},
      {"2D 300 MHz", 2, 300e6, 33.6},
      {"3D 300 MHz", 3, 300e6, 50.4},
  }};
  return scenarios;
}

FeasibilityTable feasibility_table() {
  FeasibilityTable table;
  for (const auto& s : bandwidth_scenarios()) table.scenario_names.push_back(s.name);
  for (const auto& tech : memory_tech_catalog()) {
    table.tech_names.push_back(tech.label);
    std::vector<FeasibilityCell> row;
    for (const auto& s : bandwidth_scenarios()) {
      FeasibilityCell cell{};
      cell.percent = static_cast<int>(std::lround(100.0 * tech.peak_gbps / s.desired_gbps));
      // The published table prints 59% for 1ch DDR4-2666 at 3D/300 MHz, but
      // 100*21.3/50.4 rounds to 42. We print the arithmetic and flag it.
      cell.known_erratum = tech.name == "1ch-ddr4-2666" && s.name == "3D 300 MHz";
      cell.published_percent = cell.known_erratum ? 59 : cell.percent;
      row.push_back(cell);
    }
    table.cells.push_back(std::move(row));
  }
  return table;
}

double gflops(double flops_per_point, double freq_hz) {
  if (flops_per_point <= 0.0 || freq_hz <= 0.0) {
    throw ValidationError("gflops inputs must be positive");
  }
  return flops_per_point * freq_hz / 1e9;
}

double derived_flops_per_point(int dim) {
  // Backed out from the published totals: 24.6e9/500e6 and 61.8e9/357e6.
  if (dim == 2) return 49.2;
  if (dim == 3) return 173.1;
  throw ValidationError("dim must be 2 or 3");
}

namespace {

thread_local FlopAudit* g_audit = nullptr;

// Double wrapper that tallies each arithmetic operation into the active
// audit. Comparisons and abs are free.
struct CountingScalar {
  double v = 0.0;
  CountingScalar() = default;
  explicit CountingScalar(double x) : v(x) {}

  friend CountingScalar operator+(CountingScalar a, CountingScalar b) {
    ++g_audit->adds;
    return CountingScalar(a.v + b.v);
  }
  friend CountingScalar operator-(CountingScalar a, CountingScalar b) {
    ++g_audit->subs;
    return CountingScalar(a.v - b.v);
  }
  friend CountingScalar operator*(CountingScalar a, CountingScalar b) {
    ++g_audit->muls;
    return CountingScalar(a.v * b.v);
  }
  friend CountingScalar operator/(CountingScalar a, CountingScalar b) {
    ++g_audit->divs;
    return CountingScalar(a.v / b.v);
  }
  friend bool operator==(CountingScalar a, CountingScalar b) { return a.v == b.v; }
  friend bool operator<(CountingScalar a, CountingScalar b) { return a.v < b.v; }
  friend bool operator>(CountingScalar a, CountingScalar b) { return a.v > b.v; }
  friend bool operator<=(CountingScalar a, CountingScalar b) { return a.v <= b.v; }
};

CountingScalar ft_sqrt(CountingScalar x) {
  ++g_audit->sqrts;
  return CountingScalar(std::sqrt(x.v));
}
CountingScalar ft_log(CountingScalar x) {
  ++g_audit->logs;
  return CountingScalar(std::log(x.v));
}
CountingScalar ft_acos(CountingScalar x) {
  ++g_audit->acoss;
  return CountingScalar(std::acos(x.v));
}
CountingScalar ft_cos(CountingScalar x) {
  ++g_audit->coss;
  return CountingScalar(std::cos(x.v));
}
CountingScalar ft_abs(CountingScalar x) { return CountingScalar(std::fabs(x.v)); }

}  // namespace

FlopAudit audit_flops(int dim) {
  if (dim != 2 && dim != 3) throw ValidationError("dim must be 2 or 3");
  FlopAudit audit;
  g_audit = &audit;
  // Generic nondegenerate record so every branch of the steady-state path
  // (strict stretching, off-diagonal tensor) is taken.
  BasicPointRecord<CountingScalar> rec;
  rec.dim = dim;
  for (int axis = 0; axis < dim; ++axis) {
    rec.coord_minus[axis] = CountingScalar(-1.0 - 0.1 * axis);
    rec.coord_plus[axis] = CountingScalar(1.0 + 0.2 * axis);
    for (int c = 0; c < dim; ++c) {
      rec.fm_minus[axis][c] = CountingScalar(0.3 * axis - 0.7 * c - 1.1);
      rec.fm_plus[axis][c] = CountingScalar(1.9 + 0.5 * axis + 0.4 * c);
    }
  }
  ftle_from_record(rec, CountingScalar(2.0));
  g_audit = nullptr;
  return audit;
}

}  // namespace ftle
