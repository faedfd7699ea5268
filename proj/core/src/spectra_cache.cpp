#include "spinchain/spectra_cache.hpp"

#include <unistd.h>

#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "spinchain/errors.hpp"

namespace spinchain {

namespace {

namespace fs = std::filesystem;

void append_warning(std::string* warning, const std::string& line) {
  if (warning == nullptr) return;
  if (!warning->empty()) warning->push_back('\n');
  warning->append(line);
}

// Fixed little-endian byte order regardless of host.
void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_double(std::string& out, double d) {
  std::uint64_t bits;
  std::memcpy(&bits, &d, sizeof(bits));
  put_u64(out, bits);
}

bool get_u64(std::istream& in, std::uint64_t& v) {
  unsigned char buf[8];
  if (!in.read(reinterpret_cast<char*>(buf), 8)) return false;
  v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | buf[i];
  return true;
}

bool get_double(std::istream& in, double& d) {
  std::uint64_t bits;
  if (!get_u64(in, bits)) return false;
  std::memcpy(&d, &bits, sizeof(d));
  return true;
}

void atomic_write(const fs::path& target, const std::string& content) {
  std::error_code ec;
  fs::create_directories(target.parent_path(), ec);
  const fs::path tmp =
      target.parent_path() /
      (target.filename().string() + ".tmp-" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open cache file for writing: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("short write to cache file: " + tmp.string());
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename cache file into place: " + target.string());
  }
}

// Header lines are "token value" pairs terminated by a lone "data" line.
// Returns false on any structural problem.
bool read_header(std::istream& in, std::vector<std::pair<std::string, std::string>>& fields) {
  std::string line;
  while (std::getline(in, line)) {
    if (line == "data") return true;
    const auto sp = line.find(' ');
    if (sp == std::string::npos || sp == 0) return false;
    fields.emplace_back(line.substr(0, sp), line.substr(sp + 1));
  }
  return false;
}

std::string field_value(const std::vector<std::pair<std::string, std::string>>& fields,
                        const std::string& name) {
  for (const auto& [k, v] : fields) {
    if (k == name) return v;
  }
  return {};
}

std::string header_prefix(const std::string& kind, const ChainSpec& spec) {
  std::ostringstream h;
  h << "spinchain-cache " << kCacheFormat << '\n'
    << "kind " << kind << '\n'
    << "key " << spec.key() << '\n';
  return h.str();
}

bool check_common_header(const std::vector<std::pair<std::string, std::string>>& fields,
                         const std::string& kind, const ChainSpec& spec,
                         const fs::path& file, std::string* warning) {
  if (field_value(fields, "spinchain-cache") != kCacheFormat) {
    append_warning(warning, "cache format mismatch, ignoring " + file.string());
    return false;
  }
  if (field_value(fields, "kind") != kind || field_value(fields, "key") != spec.key()) {
    append_warning(warning, "cache fingerprint mismatch, ignoring " + file.string());
    return false;
  }
  return true;
}

bool at_eof(std::istream& in) {
  return in.peek() == std::char_traits<char>::eof();
}

}  // namespace

std::string cache_basename(const ChainSpec& spec) { return spec.key(); }

fs::path env_cache_dir(const fs::path& fallback) {
  const char* raw = std::getenv("SPINCHAIN_CACHE_DIR");
  if (raw != nullptr && *raw != '\0') return fs::path(raw);
  return fallback;
}

void cache_store(const SpectralData& sd, const fs::path& dir) {
  const std::string base = cache_basename(sd.spec);

  std::string vals = header_prefix("vals", sd.spec);
  vals += "count " + std::to_string(sd.eigenvalues.size()) + "\n";
  vals += "data\n";
  for (const double e : sd.eigenvalues) put_double(vals, e);
  atomic_write(dir / (base + "-vals.bin"), vals);

  for (std::size_t k = 0; k < sd.sectors.size(); ++k) {
    const SectorVectors& sec = sd.sectors[k];
    const std::string kind = "vecs-sector-" + std::to_string(k);
    std::string body = header_prefix(kind, sd.spec);
    body += "sector_twice_sz " + std::to_string(sec.twice_sz) + "\n";
    body += "dimension " + std::to_string(sec.basis.size()) + "\n";
    body += "data\n";
    const long n = static_cast<long>(sec.basis.size());
    for (long i = 0; i < n; ++i) put_double(body, sec.values[i]);
    for (long i = 0; i < n; ++i) put_u64(body, static_cast<std::uint64_t>(sec.basis[i]));
    for (long c = 0; c < n; ++c) {
      for (long r = 0; r < n; ++r) put_double(body, sec.vectors(r, c));
    }
    atomic_write(dir / (base + "-" + kind + ".bin"), body);
  }
}

std::optional<SpectralData> cache_load(const ChainSpec& spec, bool need_vectors,
                                       const fs::path& dir, std::string* warning) {
  const std::string base = cache_basename(spec);
  const fs::path vals_path = dir / (base + "-vals.bin");
  std::ifstream in(vals_path, std::ios::binary);
  if (!in) return std::nullopt;  // plain miss, no warning

  std::vector<std::pair<std::string, std::string>> fields;
  if (!read_header(in, fields)) {
    append_warning(warning, "corrupt cache header, ignoring " + vals_path.string());
    return std::nullopt;
  }
  if (!check_common_header(fields, "vals", spec, vals_path, warning)) return std::nullopt;

  char* end = nullptr;
  const std::string count_str = field_value(fields, "count");
  const long count = std::strtol(count_str.c_str(), &end, 10);
  long expected = 0;
  try {
    expected = spec.dimension(env_budget());
  } catch (const InstanceTooLarge&) {
    return std::nullopt;
  }
  if (end == count_str.c_str() || *end != '\0' || count != expected) {
    append_warning(warning, "cache count mismatch, ignoring " + vals_path.string());
    return std::nullopt;
  }

  SpectralData sd;
  sd.spec = spec;
  sd.eigenvalues.resize(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    if (!get_double(in, sd.eigenvalues[static_cast<std::size_t>(i)])) {
      append_warning(warning, "truncated cache file, ignoring " + vals_path.string());
      return std::nullopt;
    }
  }
  if (!at_eof(in)) {
    append_warning(warning, "trailing bytes in cache file, ignoring " + vals_path.string());
    return std::nullopt;
  }

  if (!need_vectors) return sd;

  const SectorIndex index = SectorIndex::build(spec, env_budget());
  const auto& sectors = index.sectors();
  sd.sectors.reserve(sectors.size());
  for (std::size_t k = 0; k < sectors.size(); ++k) {
    const std::string kind = "vecs-sector-" + std::to_string(k);
    const fs::path path = dir / (base + "-" + kind + ".bin");
    std::ifstream vin(path, std::ios::binary);
    if (!vin) return std::nullopt;  // vectors not cached: plain miss

    std::vector<std::pair<std::string, std::string>> vf;
    if (!read_header(vin, vf)) {
      append_warning(warning, "corrupt cache header, ignoring " + path.string());
      return std::nullopt;
    }
    if (!check_common_header(vf, kind, spec, path, warning)) return std::nullopt;

    const long n = static_cast<long>(sectors[k].basis.size());
    if (field_value(vf, "sector_twice_sz") != std::to_string(sectors[k].twice_sz) ||
        field_value(vf, "dimension") != std::to_string(n)) {
      append_warning(warning, "cache sector mismatch, ignoring " + path.string());
      return std::nullopt;
    }

    SectorVectors sec;
    sec.twice_sz = sectors[k].twice_sz;
    sec.basis.resize(static_cast<std::size_t>(n));
    sec.values.resize(n);
    sec.vectors.resize(n, n);
    bool ok = true;
    for (long i = 0; ok && i < n; ++i) ok = get_double(vin, sec.values[i]);
    for (long i = 0; ok && i < n; ++i) {
      std::uint64_t b = 0;
      ok = get_u64(vin, b);
      sec.basis[static_cast<std::size_t>(i)] = static_cast<long>(b);
    }
    for (long c = 0; ok && c < n; ++c) {
      for (long r = 0; ok && r < n; ++r) ok = get_double(vin, sec.vectors(r, c));
    }
    if (!ok || !at_eof(vin)) {
      append_warning(warning, "truncated cache file, ignoring " + path.string());
      return std::nullopt;
    }
    if (sec.basis != sectors[k].basis) {
      append_warning(warning, "cache basis mismatch, ignoring " + path.string());
      return std::nullopt;
    }
    sd.sectors.push_back(std::move(sec));
  }
  return sd;
}

}  // namespace spinchain
