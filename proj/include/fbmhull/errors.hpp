#pragma once

#include <stdexcept>
#include <string>

namespace fbmhull {

// Circulant embedding produced an eigenvalue too negative to clamp.
class EmbeddingFailure : public std::runtime_error {
 public:
  explicit EmbeddingFailure(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested Cholesky oracle length exceeds the configured cap.
class OracleCapExceeded : public std::runtime_error {
 public:
  explicit OracleCapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// Lamperti evaluation point maps outside the simulated horizon.
class OutOfHorizon : public std::runtime_error {
 public:
  explicit OutOfHorizon(const std::string& msg) : std::runtime_error(msg) {}
};

// Point set has lower affine dimension than the ambient space requires.
class DegenerateInput : public std::runtime_error {
 public:
  explicit DegenerateInput(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fbmhull
