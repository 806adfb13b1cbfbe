#pragma once

#include <chrono>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "liplift/io.hpp"
#include "liplift/scalar.hpp"
#include "liplift/version.hpp"

namespace liplift {

// Machine-readable run report: ordered `key = value` lines plus optional
// structured matrix blocks. In rational mode the output is bit-identical
// across runs on the same inputs, except for the trailing duration line.
class RunReport {
 public:
  RunReport(std::string command, std::string mode) {
    add("command", std::move(command));
    add("version", version_string);
    add("mode", std::move(mode));
    start_ = std::chrono::steady_clock::now();
  }

  void add(const std::string& key, std::string value) {
    entries_.emplace_back(key, std::move(value));
  }

  void add(const std::string& key, long long value) { add(key, std::to_string(value)); }

  template <class T>
  void add_scalar(const std::string& key, const T& value) {
    add(key, scalar_traits<T>::to_string(value));
  }

  void add_input(const std::string& role, const std::string& path, const std::string& content) {
    add("input." + role + ".path", path);
    add("input." + role + ".digest", "fnv1a64:" + digest_hex(content));
  }

  void add_block(std::string block) { blocks_.push_back(std::move(block)); }

  void print(std::ostream& os) const {
    for (const auto& [k, v] : entries_) os << k << " = " << v << "\n";
    for (const auto& b : blocks_) {
      os << "begin block\n" << b;
      if (!b.empty() && b.back() != '\n') os << "\n";
      os << "end block\n";
    }
    auto elapsed = std::chrono::steady_clock::now() - start_;
    double ms = std::chrono::duration<double, std::milli>(elapsed).count();
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", ms);
    os << "duration_ms = " << buf << "\n";
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
  std::vector<std::string> blocks_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace liplift
