#pragma once

// On-disk result cache: one JSON file per SHA-256 of (operation, arguments,
// conventions version). Any I/O problem just means a miss.

#include <openssl/evp.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <unistd.h>

namespace pfwin::cli {

inline std::string sha256_hex(const std::string &data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) throw std::runtime_error("SHA-256 failed");
  static const char *hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

class ResultCache {
public:
  explicit ResultCache(bool enabled) : enabled_(enabled) {
    if (const char *env = std::getenv("PFWIN_CACHE"); env && *env)
      dir_ = env;
    else if (const char *xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
      dir_ = std::filesystem::path(xdg) / "pfwin";
    else if (const char *home = std::getenv("HOME"); home && *home)
      dir_ = std::filesystem::path(home) / ".cache" / "pfwin";
    else
      enabled_ = false;
  }

  static std::string key(const std::string &op, const std::string &args, const std::string &version) {
    return sha256_hex(op + '\0' + args + '\0' + version);
  }

  [[nodiscard]] std::optional<std::string> get(const std::string &key) const {
    if (!enabled_) return std::nullopt;
    std::ifstream in(dir_ / (key + ".json"));
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  void put(const std::string &key, const std::string &value) const {
    if (!enabled_) return;
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) return;
    const auto tmp = dir_ / (key + "." + std::to_string(::getpid()) + ".tmp");
    {
      std::ofstream out(tmp);
      if (!out) return;
      out << value;
    }
    std::filesystem::rename(tmp, dir_ / (key + ".json"), ec);
  }

private:
  bool enabled_;
  std::filesystem::path dir_;
};

} // namespace pfwin::cli
