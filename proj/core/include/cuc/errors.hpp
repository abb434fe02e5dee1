#pragma once

#include <stdexcept>
#include <string>

namespace cuc {

// Schema or semantic problem in an input document / argument set.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Singular susceptance system, disconnected graph, or similar structural defect.
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A line outage splits the network into islands.
struct IslandingError : StructuralError {
  using StructuralError::StructuralError;
};

// Model proven or reported infeasible.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failure inside the LP/MIP engine (never a wrong "optimal").
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cuc
