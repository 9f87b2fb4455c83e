#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace swarmsched {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InstanceError : public Error {
 public:
  using Error::Error;
};

class MalformedSchedule : public Error {
 public:
  using Error::Error;
};

// A tensor that does not decompose into one 0 -> m+1 path for some robot.
class NotAPath : public Error {
 public:
  NotAPath(int robot, const std::string& what)
      : Error("robot " + std::to_string(robot) + ": " + what), robot_(robot) {}
  int robot() const noexcept { return robot_; }

 private:
  int robot_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Cyclic cross-schedule precedence: tasks wait on each other through
// different robots. cycle() lists the task indices in waiting order.
class DeadlockError : public Error {
 public:
  explicit DeadlockError(std::vector<int> cycle);
  const std::vector<int>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<int> cycle_;
};

class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class TooLargeError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

// Malformed input file. byte_offset() is 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t byte_offset = 0)
      : Error(what), byte_offset_(byte_offset) {}
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

}  // namespace swarmsched
