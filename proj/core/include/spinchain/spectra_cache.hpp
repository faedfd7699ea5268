#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "spinchain/spectra.hpp"

namespace spinchain {

// On-disk layout: one file per (2s, L, J, periodic, kind), where kind is
// "vals" or "vecs-sector-<k>" with k the sector position in descending-Sz
// order. Each file carries a text header (format version, spec fields, counts)
// terminated by a "data" line, then raw little-endian payload. Eigenvalues
// round-trip bit exactly. Writers stage to a temporary file and rename, so
// concurrent writers of the same spec race benignly.

inline constexpr const char* kCacheFormat = "v1";

std::string cache_basename(const ChainSpec& spec);

// Environment override SPINCHAIN_CACHE_DIR; empty path means caching is off.
std::filesystem::path env_cache_dir(const std::filesystem::path& fallback = {});

// Writes the eigenvalue file, plus one eigenvector file per sector when
// present. Creates dir if missing. Throws IoError on filesystem failure.
void cache_store(const SpectralData& sd, const std::filesystem::path& dir);

// Returns the cached decomposition, or nullopt on any miss: absent file,
// version or fingerprint mismatch, or corruption. A corrupt or mismatched
// file is reported through `warning` (when given), never returned as data.
std::optional<SpectralData> cache_load(const ChainSpec& spec, bool need_vectors,
                                       const std::filesystem::path& dir,
                                       std::string* warning = nullptr);

}  // namespace spinchain
