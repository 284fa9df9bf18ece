#include "topofuse/pipeline/features.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>
#include <unordered_map>

#include <unistd.h>

#include "topofuse/errors.hpp"
#include "topofuse/format.hpp"

namespace topofuse::pipeline {

namespace fs = std::filesystem;

std::string format_feature_csv(const std::vector<Sample>& samples) {
  if (samples.empty()) throw ArgumentError("no samples to write");
  const std::size_t n = samples.front().betti ? samples.front().betti->size() : 0;
  if (n == 0) throw ArgumentError("sample " + samples.front().id + " has no curve");

  std::string out = "id,label";
  for (std::size_t k = 0; k < n; ++k) out += ",b" + std::to_string(k);
  out += '\n';
  for (const Sample& s : samples) {
    if (!s.betti || s.betti->size() != n) throw ArgumentError("sample " + s.id + " has no curve of length " + std::to_string(n));
    if (s.id.find_first_of(",\n\r") != std::string::npos) throw ArgumentError("sample id " + s.id + " cannot be stored in CSV");
    out += s.id;
    out += ',';
    out += std::to_string(s.label);
    for (double v : s.betti->samples) {
      out += ',';
      out += format_real(v);
    }
    out += '\n';
  }
  return out;
}

void write_file_atomic(const fs::path& path, const std::string& bytes) {
  static std::atomic<unsigned> counter{0};
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path.string(), "cannot open for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError(path.string(), "write failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError(path.string(), "cannot move temporary file into place");
  }
}

void write_feature_csv(const fs::path& path, const std::vector<Sample>& samples) {
  write_file_atomic(path, format_feature_csv(samples));
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) return fields;
    start = comma + 1;
  }
}

}  // namespace

std::vector<Sample> read_feature_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open feature file");
  const std::string where = path.string();

  std::string line;
  if (!std::getline(in, line)) throw IoError(where, "empty feature file");
  const std::vector<std::string> header = split_commas(line);
  if (header.size() < 3 || header[0] != "id" || header[1] != "label") {
    throw IoError(where, "header must start with id,label,b0");
  }
  const std::size_t n = header.size() - 2;
  for (std::size_t k = 0; k < n; ++k) {
    if (header[k + 2] != "b" + std::to_string(k)) throw IoError(where, "unexpected column " + header[k + 2]);
  }

  std::vector<Sample> samples;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_commas(line);
    const std::string at = "line " + std::to_string(line_no);
    if (fields.size() != n + 2) throw IoError(where, at + ": expected " + std::to_string(n + 2) + " columns");
    Sample s;
    s.id = fields[0];
    if (fields[1] == "0") {
      s.label = kNegative;
    } else if (fields[1] == "1") {
      s.label = kPositive;
    } else {
      throw IoError(where, at + ": label must be 0 or 1");
    }
    BettiCurve curve;
    curve.samples.reserve(n);
    try {
      for (std::size_t k = 0; k < n; ++k) curve.samples.push_back(parse_real(fields[k + 2]));
    } catch (const ArgumentError& e) {
      throw IoError(where, at + ": " + e.what());
    }
    s.betti = std::move(curve);
    samples.push_back(std::move(s));
  }
  if (samples.empty()) throw IoError(where, "feature file has no rows");
  return samples;
}

void attach_features(std::vector<Sample>& samples, const std::vector<Sample>& features) {
  std::unordered_map<std::string, const Sample*> by_id;
  for (const Sample& f : features) by_id.emplace(f.id, &f);
  for (Sample& s : samples) {
    const auto it = by_id.find(s.id);
    if (it == by_id.end()) throw ArgumentError("no feature row for sample " + s.id);
    if (it->second->label != s.label) throw ArgumentError("feature row for " + s.id + " has a different label");
    s.betti = it->second->betti;
  }
}

CurveCache::CurveCache(fs::path directory) : directory_(std::move(directory)) {
  std::error_code ec;
  fs::create_directories(directory_, ec);
  if (ec || !fs::is_directory(directory_)) throw IoError(directory_.string(), "cannot create cache directory");
}

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv_bytes(std::uint64_t& h, const void* data, std::size_t size) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
}

template <class T>
void fnv_value(std::uint64_t& h, T value) {
  fnv_bytes(h, &value, sizeof value);
}

}  // namespace

std::uint64_t CurveCache::key(const ImageTensor& image, const CurveConfig& resolved) {
  std::uint64_t h = kFnvOffset;
  fnv_value<std::uint64_t>(h, image.height());
  fnv_value<std::uint64_t>(h, image.width());
  fnv_bytes(h, image.values().data(), image.values().size_bytes());
  fnv_value<std::uint64_t>(h, resolved.n);
  fnv_value<int>(h, static_cast<int>(resolved.range));
  if (resolved.range == RangeMode::kFixed) {
    fnv_value(h, resolved.t_min);
    fnv_value(h, resolved.t_max);
  }
  fnv_value(h, resolved.min_persistence);
  fnv_value<int>(h, resolved.normalize ? 1 : 0);
  return h;
}

fs::path CurveCache::path_for(std::uint64_t key) const {
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.curve", static_cast<unsigned long long>(key));
  return directory_ / name;
}

std::optional<BettiCurve> CurveCache::lookup(std::uint64_t key) const {
  std::ifstream in(path_for(key), std::ios::binary);
  if (!in) return std::nullopt;
  // A damaged entry is a miss; it is rewritten on store.
  BettiCurve curve;
  std::string token;
  std::size_t n = 0;
  try {
    if (!(in >> token) || token != "curve") return std::nullopt;
    if (!(in >> n) || n == 0) return std::nullopt;
    if (!(in >> token)) return std::nullopt;
    curve.t_min = parse_real(token);
    if (!(in >> token)) return std::nullopt;
    curve.t_max = parse_real(token);
    curve.samples.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (!(in >> token)) return std::nullopt;
      curve.samples.push_back(parse_real(token));
    }
  } catch (const ArgumentError&) {
    return std::nullopt;
  }
  if (in >> token) return std::nullopt;
  return curve;
}

void CurveCache::store(std::uint64_t key, const BettiCurve& curve) const {
  std::string text = "curve " + std::to_string(curve.size()) + '\n';
  text += format_real(curve.t_min) + ' ' + format_real(curve.t_max) + '\n';
  for (double v : curve.samples) text += format_real(v) + '\n';
  write_file_atomic(path_for(key), text);
}

BettiCurve CurveCache::get(const ImageTensor& image, const CurveConfig& resolved) const {
  const std::uint64_t k = key(image, resolved);
  if (std::optional<BettiCurve> hit = lookup(k); hit && hit->size() == resolved.n) return *hit;
  BettiCurve curve = vectorize_image(image, resolved);
  store(k, curve);
  return curve;
}

void extract_curves_cached(std::vector<Sample>& samples, const CurveConfig& config, const CurveCache& cache) {
  const std::vector<ImageTensor> images = images_of(samples);
  const CurveConfig resolved = resolve_range(images, config);
  unsigned workers = resolved.workers != 0 ? resolved.workers : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(samples.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      for (std::size_t i = next++; i < samples.size(); i = next++) samples[i].betti = cache.get(images[i], resolved);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace topofuse::pipeline
