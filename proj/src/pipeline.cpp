#include "ftle/pipeline.hpp"

#include <cmath>

namespace ftle {

void AcceleratorConfig::validate() const {
  if (dim != 2 && dim != 3) throw ValidationError("dim must be 2 or 3");
  if (freq_hz <= 0.0) throw ValidationError("freq_hz must be positive");
  if (ii < 1) throw ValidationError("initiation interval must be >= 1");
  if (data_bits_per_point <= 0 || data_bits_per_point % 8 != 0) {
    throw ValidationError("data bits per point must be a positive multiple of 8");
  }
  if (index_bits_per_point <= 0 || index_bits_per_point % 8 != 0) {
    throw ValidationError("index bits per point must be a positive multiple of 8");
  }
}

AcceleratorConfig AcceleratorConfig::defaults(int dim) {
  if (dim == 2) return {2, 500e6, 1, 264, 768, 128};
  if (dim == 3) return {3, 357e6, 1, 421, 1152, 192};
  throw ValidationError("dim must be 2 or 3");
}

void MemorySystem::validate() const {
  if (peak_bytes_per_sec <= 0.0) throw ValidationError("peak bandwidth must be positive");
  if (banks < 1) throw ValidationError("bank count must be >= 1");
  if (!(pattern_efficiency > 0.0 && pattern_efficiency <= 1.0)) {
    throw ValidationError("pattern efficiency must be in (0, 1]");
  }
}

const char* to_string(Bound b) { return b == Bound::Compute ? "compute" : "memory"; }

NaiveThroughput naive_throughput(int values_per_point, int indexes_per_point,
                                 int banks, double freq_hz) {
  if (banks <= 0) throw ValidationError("bank count must be positive");
  if (values_per_point <= 0 || indexes_per_point < 0 || freq_hz <= 0.0) {
    throw ValidationError("naive throughput inputs must be positive");
  }
  const int reads = values_per_point + indexes_per_point;
  NaiveThroughput out;
  out.cycles_per_point = (reads + banks - 1) / banks;
  out.points_per_cycle = 1.0 / out.cycles_per_point;
  out.points_per_sec = freq_hz / out.cycles_per_point;
  return out;
}

PipelinedThroughput pipelined_throughput(const AcceleratorConfig& cfg,
                                         const MemorySystem& mem) {
  cfg.validate();
  mem.validate();
  const double compute_rate = cfg.freq_hz / cfg.ii;
  const double memory_rate = mem.effective_bytes_per_sec() / cfg.bytes_per_point();
  PipelinedThroughput out;
  if (memory_rate < compute_rate) {
    out.points_per_sec = memory_rate;
    out.bound = Bound::Memory;
  } else {
    out.points_per_sec = compute_rate;
    out.bound = Bound::Compute;
  }
  out.cycles_per_point = cfg.freq_hz / out.points_per_sec;
  return out;
}

double estimate_runtime(double n_points, double rate_points_per_sec,
                        int latency_cycles, double freq_hz) {
  if (n_points < 0.0 || rate_points_per_sec <= 0.0 || latency_cycles < 0 || freq_hz <= 0.0) {
    throw ValidationError("runtime estimate inputs out of range");
  }
  return latency_cycles / freq_hz + n_points / rate_points_per_sec;
}

}  // namespace ftle
