#pragma once

#include <stdexcept>
#include <string>

namespace ecoacc {

// Base for every library error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BoundsError : public Error {
 public:
  using Error::Error;
};

// Deceleration too strong for the spatial step (v(k+1) <= 0).
class StepInfeasibleError : public Error {
 public:
  using Error::Error;
};

class NoFeasiblePlanError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class TrafficCollisionError : public Error {
 public:
  using Error::Error;
};

class SimulationAbort : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ecoacc
