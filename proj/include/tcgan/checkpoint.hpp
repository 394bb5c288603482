#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tcgan {

struct NamedArray {
  std::string name;
  std::vector<std::size_t> shape;
  std::vector<double> data;
};

struct NamedBlob {
  std::string name;
  std::vector<std::uint8_t> bytes;
};

// Little-endian binary snapshot: magic, format version, JSON header (config
// echo, step, optimizer step counts), length-prefixed named float64 arrays
// with shapes, named byte blobs (rng states), and a trailing checksum so a
// corrupted body fails loudly instead of loading garbage.
struct CheckpointRecord {
  std::string header_json;  // {"config": ..., "step": ..., "adam_g_steps": ..., "adam_d_steps": ...}
  std::vector<NamedArray> arrays;
  std::vector<NamedBlob> blobs;
};

void save_checkpoint(const CheckpointRecord& record, const std::string& path);
CheckpointRecord load_checkpoint(const std::string& path);

}  // namespace tcgan
