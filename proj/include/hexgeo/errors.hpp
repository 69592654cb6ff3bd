#pragma once

#include <stdexcept>
#include <string>

namespace hexgeo {

// Invalid parameters or unsupported configuration (bad k, bad q, ...).
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Operation applied outside its mathematical domain (inv(0), projecting the
// nucleus, classification mismatch, ...).
class domain_error : public std::runtime_error {
public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// An enumeration or search exceeded its configured budget.
class resource_error : public std::runtime_error {
public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hexgeo
