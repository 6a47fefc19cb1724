#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace sitelab {

// Every domain failure carries a stable error name (e.g. "MissingComposite")
// that the CLI serializes verbatim, plus a human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& detail)
      : std::runtime_error(name + ": " + detail), name_(std::move(name)), detail_(detail) {}

  const std::string& name() const noexcept { return name_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string name_;
  std::string detail_;
};

// Thrown when an exhaustive search would exceed the configured bounds.
inline Error explosion_guard(const std::string& what) { return Error("ExplosionGuard", what); }

}  // namespace sitelab
