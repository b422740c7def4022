#pragma once

#include <cstdint>
#include <string>

#include "ftle/errors.hpp"

namespace ftle {

// Streaming-core configuration: clock, initiation interval, and the per-point
// record widths on the data and index streams.
struct AcceleratorConfig {
  int dim = 2;
  double freq_hz = 500e6;
  int ii = 1;                  // cycles per point when compute-bound
  int latency_cycles = 264;    // pipeline depth, informational
  int data_bits_per_point = 768;
  int index_bits_per_point = 128;

  void validate() const;
  double bytes_per_point() const {
    return static_cast<double>(data_bits_per_point + index_bits_per_point) / 8.0;
  }

  static AcceleratorConfig defaults(int dim);
};

struct MemorySystem {
  std::string name = "custom";
  double peak_bytes_per_sec = 0.0;
  int banks = 1;
  int reads_per_bank_per_cycle = 1;
  double pattern_efficiency = 1.0;  // fraction of peak for irregular access

  void validate() const;
  double effective_bytes_per_sec() const { return peak_bytes_per_sec * pattern_efficiency; }
};

struct NaiveThroughput {
  int cycles_per_point = 0;
  double points_per_cycle = 0.0;
  double points_per_sec = 0.0;
};

enum class Bound { Compute, Memory };

const char* to_string(Bound b);

struct PipelinedThroughput {
  double points_per_sec = 0.0;
  Bound bound = Bound::Compute;
  double cycles_per_point = 0.0;  // freq / rate
};

// Bank-limited design: one read per bank per cycle, so a point costs
// ceil(reads/banks) cycles.
NaiveThroughput naive_throughput(int values_per_point, int indexes_per_point,
                                 int banks, double freq_hz);

// Fully pipelined design: min(freq/ii, effective bandwidth / bytes per point),
// labeled with whichever side limits. A tie is compute-bound.
PipelinedThroughput pipelined_throughput(const AcceleratorConfig& cfg,
                                         const MemorySystem& mem);

// Fill + drain accounting: latency/freq + n_points/rate.
double estimate_runtime(double n_points, double rate_points_per_sec,
                        int latency_cycles, double freq_hz);

}  // namespace ftle
