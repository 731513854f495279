#pragma once

#include <stdexcept>
#include <string>

namespace symdesign {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// compose() called on elements of different Dih_n.
struct OrderMismatchError : Error {
  using Error::Error;
};

// n outside the supported range for Dih_n.
struct UnsupportedOrderError : Error {
  using Error::Error;
};

// build_lattice() input is not the complete subgroup list of one Dih_n.
struct LatticeError : Error {
  using Error::Error;
};

// Group action undefined because the design is structurally incompatible.
// joint_id names the first joint (layer, then id order) whose image is missing.
struct OrbitUndefinedError : Error {
  OrbitUndefinedError(const std::string& msg, int joint) : Error(msg), joint_id(joint) {}
  int joint_id;
};

// Skeleton edit that violates the joint-tree rules.
struct IllegalActionError : Error {
  using Error::Error;
};

// Attribute name or map shape outside the design's declared schema.
struct SchemaError : Error {
  using Error::Error;
};

// Label / JSON / config text that does not parse.
struct ParseError : Error {
  using Error::Error;
};

// Inconsistent runtime configuration (e.g. mismatched grid interval count).
struct ConfigError : Error {
  using Error::Error;
};

// Fitness oracle failure while a search run is in progress.
struct SearchError : Error {
  using Error::Error;
};

}  // namespace symdesign
