#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace affilab {

// Model checkpoint container: a small binary tensor file plus a text sidecar
// manifest (path + ".manifest.txt") describing architecture and provenance.
//
// Binary layout, all integers and doubles little-endian:
//   magic   8 bytes  "ALABCKPT"
//   u32     format version (1)
//   u32     tensor count
//   per tensor:
//     u32   name length, then name bytes
//     u32   rank, then u64 dims[rank]
//     f64   data[prod(dims)]
struct NamedTensor {
    std::string name;
    std::vector<std::uint64_t> dims;
    std::vector<double> data;
};

void save_checkpoint(const std::string& path, const std::vector<NamedTensor>& tensors,
                     const std::map<std::string, std::string>& manifest);

// Throws std::runtime_error naming the path on bad magic, version, or
// truncation.
std::vector<NamedTensor> load_checkpoint(const std::string& path);

std::map<std::string, std::string> load_manifest(const std::string& checkpoint_path);

// FNV-1a hash of a byte view; used to stamp training data into manifests.
std::uint64_t fnv1a(const void* data, std::size_t len);

} // namespace affilab
