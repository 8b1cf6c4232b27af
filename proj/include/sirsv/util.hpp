#ifndef SIRSV_UTIL_HPP
#define SIRSV_UTIL_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace sirsv {

// Runs fn(block_index, begin, end) over [0, count) split into fixed-size
// blocks. Blocks may execute on worker threads, but the block layout does not
// depend on the thread count, so per-block accumulators reduced in block
// order give bit-identical results on any machine.
void parallel_blocks(std::size_t count, std::size_t block_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

// FNV-1a 64-bit checksum, rendered as 16 hex digits. Used for output-file
// and config fingerprints in run manifests (not a cryptographic hash).
std::uint64_t fnv1a64(const void* data, std::size_t size);
std::string fnv1a64_hex(const std::string& bytes);
std::string file_checksum(const std::string& path);

std::vector<double> linspace(double lo, double hi, int count);
std::vector<double> logspace(double lo, double hi, int count);

}  // namespace sirsv

#endif
