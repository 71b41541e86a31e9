#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "nlslab/certificates.hpp"
#include "nlslab/lifespan.hpp"
#include "nlslab/registry.hpp"

namespace nlslab {

namespace detail {

// FIPS 180-4 SHA-256, self-contained so report hashing has no dependencies.
class Sha256 {
 public:
  Sha256() { reset(); }

  void reset() {
    static constexpr std::uint32_t init[8] = {0x6a09e667u, 0xbb67ae85u, 0x3c6ef372u, 0xa54ff53au,
                                              0x510e527fu, 0x9b05688cu, 0x1f83d9abu, 0x5be0cd19u};
    for (int i = 0; i < 8; ++i) h_[i] = init[i];
    buflen_ = 0;
    total_ = 0;
  }

  void update(const void* data, std::size_t len) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    total_ += len;
    while (len > 0) {
      const std::size_t take = std::min(len, std::size_t(64) - buflen_);
      for (std::size_t i = 0; i < take; ++i) buf_[buflen_ + i] = p[i];
      buflen_ += take;
      p += take;
      len -= take;
      if (buflen_ == 64) {
        process(buf_);
        buflen_ = 0;
      }
    }
  }

  std::array<unsigned char, 32> digest() {
    const std::uint64_t bits = total_ * 8;
    unsigned char pad = 0x80;
    update(&pad, 1);
    const unsigned char zero = 0x00;
    while (buflen_ != 56) update(&zero, 1);
    unsigned char len_be[8];
    for (int i = 0; i < 8; ++i) len_be[i] = (unsigned char) ((bits >> (56 - 8 * i)) & 0xff);
    update(len_be, 8);
    std::array<unsigned char, 32> out{};
    for (int i = 0; i < 8; ++i) {
      out[4 * i + 0] = (unsigned char) ((h_[i] >> 24) & 0xff);
      out[4 * i + 1] = (unsigned char) ((h_[i] >> 16) & 0xff);
      out[4 * i + 2] = (unsigned char) ((h_[i] >> 8) & 0xff);
      out[4 * i + 3] = (unsigned char) (h_[i] & 0xff);
    }
    return out;
  }

 private:
  static std::uint32_t rotr(std::uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

  void process(const unsigned char block[64]) {
    static constexpr std::uint32_t K[64] = {
        0x428a2f98u, 0x71374491u, 0xb5c0fbcfu, 0xe9b5dba5u, 0x3956c25bu, 0x59f111f1u, 0x923f82a4u,
        0xab1c5ed5u, 0xd807aa98u, 0x12835b01u, 0x243185beu, 0x550c7dc3u, 0x72be5d74u, 0x80deb1feu,
        0x9bdc06a7u, 0xc19bf174u, 0xe49b69c1u, 0xefbe4786u, 0x0fc19dc6u, 0x240ca1ccu, 0x2de92c6fu,
        0x4a7484aau, 0x5cb0a9dcu, 0x76f988dau, 0x983e5152u, 0xa831c66du, 0xb00327c8u, 0xbf597fc7u,
        0xc6e00bf3u, 0xd5a79147u, 0x06ca6351u, 0x14292967u, 0x27b70a85u, 0x2e1b2138u, 0x4d2c6dfcu,
        0x53380d13u, 0x650a7354u, 0x766a0abbu, 0x81c2c92eu, 0x92722c85u, 0xa2bfe8a1u, 0xa81a664bu,
        0xc24b8b70u, 0xc76c51a3u, 0xd192e819u, 0xd6990624u, 0xf40e3585u, 0x106aa070u, 0x19a4c116u,
        0x1e376c08u, 0x2748774cu, 0x34b0bcb5u, 0x391c0cb3u, 0x4ed8aa4au, 0x5b9cca4fu, 0x682e6ff3u,
        0x748f82eeu, 0x78a5636fu, 0x84c87814u, 0x8cc70208u, 0x90befffau, 0xa4506cebu, 0xbef9a3f7u,
        0xc67178f2u};
    std::uint32_t w[64];
    for (int t = 0; t < 16; ++t)
      w[t] = (std::uint32_t(block[4 * t]) << 24) | (std::uint32_t(block[4 * t + 1]) << 16) |
             (std::uint32_t(block[4 * t + 2]) << 8) | std::uint32_t(block[4 * t + 3]);
    for (int t = 16; t < 64; ++t) {
      const std::uint32_t s0 = rotr(w[t - 15], 7) ^ rotr(w[t - 15], 18) ^ (w[t - 15] >> 3);
      const std::uint32_t s1 = rotr(w[t - 2], 17) ^ rotr(w[t - 2], 19) ^ (w[t - 2] >> 10);
      w[t] = w[t - 16] + s0 + w[t - 7] + s1;
    }
    std::uint32_t a = h_[0], b = h_[1], c = h_[2], d = h_[3];
    std::uint32_t e = h_[4], f = h_[5], g = h_[6], h = h_[7];
    for (int t = 0; t < 64; ++t) {
      const std::uint32_t S1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
      const std::uint32_t ch = (e & f) ^ (~e & g);
      const std::uint32_t t1 = h + S1 + ch + K[t] + w[t];
      const std::uint32_t S0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
      const std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
      const std::uint32_t t2 = S0 + maj;
      h = g;
      g = f;
      f = e;
      e = d + t1;
      d = c;
      c = b;
      b = a;
      a = t1 + t2;
    }
    h_[0] += a;
    h_[1] += b;
    h_[2] += c;
    h_[3] += d;
    h_[4] += e;
    h_[5] += f;
    h_[6] += g;
    h_[7] += h;
  }

  std::uint32_t h_[8];
  unsigned char buf_[64];
  std::size_t buflen_ = 0;
  std::uint64_t total_ = 0;
};

inline std::string hex(const std::array<unsigned char, 32>& d) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (unsigned char b : d) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Quote a free-text CSV field (may contain commas).
inline std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

template <class T>
inline std::string joined(const std::vector<T>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ';';
    if constexpr (std::is_same_v<T, double>) os << num(v[i]);
    else os << v[i];
  }
  return os.str();
}

}  // namespace detail

inline std::string sha256_hex(std::string_view data) {
  detail::Sha256 h;
  h.update(data.data(), data.size());
  return detail::hex(h.digest());
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("report: cannot open '" + path + "' for writing");
  out.write(content.data(), std::streamsize(content.size()));
  if (!out) throw std::runtime_error("report: short write to '" + path + "'");
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("report: cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// One row per sampled inequality.
inline std::string registry_csv(const std::vector<RatioReport>& reports) {
  std::string out =
      "id,samples_per_size,shape,constant_ceiling,trend_slope,slope_min,slope_max,aux_ok,pass,"
      "sizes,max_ratio,normalized,statement\n";
  for (const RatioReport& r : reports) {
    out += r.id;
    out += ',' + std::to_string(r.samples_per_size);
    out += ',' + detail::num(r.shape);
    out += ',' + detail::num(r.constant_ceiling);
    out += ',' + detail::num(r.trend_slope);
    out += ',' + detail::num(r.slope_min);
    out += ',' + detail::num(r.slope_max);
    out += r.aux_ok ? ",1" : ",0";
    out += r.pass ? ",1" : ",0";
    out += ',' + detail::joined(r.sizes);
    out += ',' + detail::joined(r.max_ratio);
    out += ',' + detail::joined(r.normalized);
    out += ',' + detail::quoted(r.statement);
    out += '\n';
  }
  return out;
}

// One row per observation point per bound.
inline std::string certificate_csv(const std::vector<CertificateReport>& reports) {
  std::string out = "kind,t,lhs,rhs,margin\n";
  for (const CertificateReport& r : reports) {
    const std::string kind = to_string(r.kind);
    for (const MarginPoint& pt : r.points) {
      out += kind;
      out += ',' + detail::num(pt.t);
      out += ',' + detail::num(pt.lhs);
      out += ',' + detail::num(pt.rhs);
      out += ',' + detail::num(pt.margin);
      out += '\n';
    }
  }
  return out;
}

// One row per scan cell.
inline std::string lifespan_csv(const LifespanTable& table) {
  std::string out =
      "index,eps,s1,s,seed,feasible,delta,escape_radius,t_good,horizon,dt,observed_escape,"
      "sup_ws1_tgood,ws1_initial,max_mass_drift,tail_warning,pass,reason\n";
  for (const LifespanCell& c : table.cells) {
    out += std::to_string(c.index);
    out += ',' + detail::num(c.eps);
    out += ',' + detail::num(c.s1);
    out += ',' + detail::num(c.s);
    out += ',' + std::to_string(c.seed);
    out += c.feasible ? ",1" : ",0";
    out += ',' + detail::num(c.delta);
    out += ',' + detail::num(c.escape_radius);
    out += ',' + detail::num(c.t_guaranteed);
    out += ',' + detail::num(c.horizon);
    out += ',' + detail::num(c.dt);
    out += ',' + detail::num(c.observed_escape);
    out += ',' + detail::num(c.sup_ws1_tgood);
    out += ',' + detail::num(c.ws1_initial);
    out += ',' + detail::num(c.max_mass_drift);
    out += c.tail_warning ? ",1" : ",0";
    out += c.pass ? ",1" : ",0";
    out += ',' + detail::quoted(c.reason);
    out += '\n';
  }
  return out;
}

// Everything needed to reproduce a run: the resolved configuration, the
// master seed, the pinned constants, the artifact list and a content hash
// over the artifact bytes (timestamps are informational and excluded).
struct RunManifest {
  std::string command;
  std::string preset;
  nlohmann::json config;
  std::uint64_t seed = 0;
  double M_hat = 0.0;
  double C_hat = 0.0;
  double R = 0.0;
  std::vector<std::string> outputs;
  std::string content_hash;
  std::string started_at;
  std::string finished_at;
  nlohmann::json summary;
};

inline std::string iso_utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Hash the named artifacts (paths relative to dir) in listing order.
inline std::string hash_outputs(const std::string& dir, const std::vector<std::string>& names) {
  detail::Sha256 h;
  for (const std::string& name : names) {
    const std::string bytes = read_text_file(dir.empty() ? name : dir + "/" + name);
    h.update(name.data(), name.size());
    h.update("\0", 1);
    h.update(bytes.data(), bytes.size());
    h.update("\n", 1);
  }
  return detail::hex(h.digest());
}

inline void write_manifest(const std::string& path, const RunManifest& m) {
  nlohmann::json j;
  j["command"] = m.command;
  j["preset"] = m.preset;
  j["config"] = m.config;
  j["seed"] = m.seed;
  j["constants"] = {{"M_hat", m.M_hat}, {"C_hat", m.C_hat}, {"R", m.R}};
  j["outputs"] = m.outputs;
  j["content_hash"] = m.content_hash;
  j["started_at"] = m.started_at;
  j["finished_at"] = m.finished_at;
  j["summary"] = m.summary;
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace nlslab
