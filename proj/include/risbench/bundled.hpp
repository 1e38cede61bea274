#pragma once

#include <span>
#include <string_view>

namespace risbench::bundled {

struct BundledFile {
  std::string_view id;
  std::string_view json;
};

/// Unit-cell specs shipped under data/cells, sorted by id.
std::span<const BundledFile> cells();

/// Benchmark patterns shipped under data/benchmarks, sorted by id.
std::span<const BundledFile> benchmarks();

}  // namespace risbench::bundled
