#pragma once

#include <array>
#include <string>
#include <vector>

#include "ftle/errors.hpp"

namespace ftle {

// Named memory technologies with peak bandwidth in GB/s (GB = 1e9 bytes).
struct MemoryTech {
  std::string name;   // CLI identifier, e.g. "2ch-ddr4-2400"
  std::string label;  // display label, e.g. "2 channel DDR4-2400"
  double peak_gbps;
};

// Catalog order matches the feasibility table rows.
const std::vector<MemoryTech>& memory_tech_catalog();

// Lookup by name, case-sensitive. Throws ValidationError on unknown names.
const MemoryTech& find_memory_tech(const std::string& name);

// Vendor-reported synthesis figures for the streaming core. Resource and
// power rows are reported constants, never computed here; only the bandwidth
// rows are recomputed from bit widths and frequency.
struct SynthesisReference {
  int dim;
  double max_freq_mhz;
  int latency_cycles;
  int data_bits_per_cycle;
  int index_bits_per_cycle;
  int lut;
  int lutram;
  int ff;
  int dsp;
  int bram;
  double power_w;
};

const SynthesisReference& synthesis_reference(int dim);

struct BandwidthRequirement {
  double data_gbps;
  double index_gbps;
};

// bits * freq / 8 / 1e9 per stream.
BandwidthRequirement required_bandwidth(int data_bits, int index_bits, double freq_hz);

// The four demand scenarios of the feasibility table.
struct BandwidthScenario {
  std::string name;
  int dim;
  double freq_hz;
  double desired_gbps;  // data + index streams combined
};

const std::array<BandwidthScenario, 4>& bandwidth_scenarios();

struct FeasibilityCell {
  int percent;          // round(100 * absolute / desired)
  bool known_erratum;   // source table prints a different value here
  int published_percent;  // what the source prints when known_erratum
};

struct FeasibilityTable {
  std::vector<std::string> tech_names;
  std::vector<std::string> scenario_names;
  std::vector<std::vector<FeasibilityCell>> cells;  // [tech][scenario]
};

FeasibilityTable feasibility_table();

// flops_per_point * freq / 1e9, assuming one point per cycle.
double gflops(double flops_per_point, double freq_hz);

// Per-point FLOP constants backed out from the published GFLOPS totals at the
// reference frequencies (24.6 GFLOPS @ 500 MHz, 61.8 GFLOPS @ 357 MHz).
double derived_flops_per_point(int dim);

// Instrumented operation count of the shipped per-point kernel path.
struct FlopAudit {
  long adds = 0;
  long subs = 0;
  long muls = 0;
  long divs = 0;
  long sqrts = 0;
  long logs = 0;
  long acoss = 0;
  long coss = 0;
  long total() const { return adds + subs + muls + divs + sqrts + logs + acoss + coss; }
};

// Runs the kernel formula sequence on a counting scalar for a nondegenerate
// point. Deterministic; transcendentals count 1 each.
FlopAudit audit_flops(int dim);

}  // namespace ftle
