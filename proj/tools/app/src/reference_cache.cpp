#include "pdopt/app/reference_cache.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <system_error>

#include "pdopt/app/output.hpp"

namespace pdopt::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kCacheFormat = 1;

}  // namespace

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");

  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    char buf[3];
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string landscape_hash(const RunConfig& config) {
  return sha256_hex(landscape_fingerprint(config));
}

fs::path reference_cache_path(const fs::path& config_file) {
  fs::path p = config_file;
  p.replace_extension(".reference.json");
  return p;
}

std::string reference_to_json(const ReferenceResult& ref, const std::string& hash) {
  json j;
  j["format"] = kCacheFormat;
  j["landscape_sha256"] = hash;
  j["point"] = {{"rf", ref.point.rf}, {"cf", ref.point.cf}, {"vd", ref.point.vd}};
  j["performance"] = {{"snr_db", ref.performance.snr_db},
                      {"bandwidth_hz", ref.performance.bandwidth_hz},
                      {"phase_margin_deg", ref.performance.phase_margin_deg},
                      {"model_ok", ref.performance.model_ok}};
  j["merit"] = {{"snr", ref.merit.snr},
                {"bandwidth", ref.merit.bandwidth},
                {"phase", ref.merit.phase},
                {"global", ref.merit.global}};
  j["evaluations"] = ref.evaluations;
  return j.dump(2) + "\n";
}

std::optional<ReferenceResult> load_reference(const fs::path& cache_file, const std::string& hash) {
  std::error_code ec;
  if (!fs::is_regular_file(cache_file, ec)) return std::nullopt;
  try {
    const json j = json::parse(read_file(cache_file));
    if (j.at("format").get<int>() != kCacheFormat) return std::nullopt;
    if (j.at("landscape_sha256").get<std::string>() != hash) return std::nullopt;

    ReferenceResult ref;
    const auto& p = j.at("point");
    ref.point = {p.at("rf").get<double>(), p.at("cf").get<double>(), p.at("vd").get<double>()};
    const auto& perf = j.at("performance");
    ref.performance.snr_db = perf.at("snr_db").get<double>();
    ref.performance.bandwidth_hz = perf.at("bandwidth_hz").get<double>();
    ref.performance.phase_margin_deg = perf.at("phase_margin_deg").get<double>();
    ref.performance.model_ok = perf.at("model_ok").get<bool>();
    const auto& m = j.at("merit");
    ref.merit = {m.at("snr").get<double>(), m.at("bandwidth").get<double>(),
                 m.at("phase").get<double>(), m.at("global").get<double>()};
    ref.evaluations = j.at("evaluations").get<std::uint64_t>();
    return ref;
  } catch (const json::exception&) {
    return std::nullopt;
  } catch (const IoError&) {
    return std::nullopt;
  }
}

void store_reference(const fs::path& cache_file, const ReferenceResult& ref,
                     const std::string& hash) {
  write_file_atomic(cache_file, reference_to_json(ref, hash));
}

}  // namespace pdopt::app
