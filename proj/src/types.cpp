#include "jaccard/types.hpp"

#include <algorithm>

namespace jaccard {

BinaryVector::BinaryVector(std::vector<std::uint8_t> bits)
    : bits_(std::move(bits)) {
  if (bits_.empty()) {
    throw ValidationError("binary vector must have length >= 1");
  }
  for (std::size_t k = 0; k < bits_.size(); ++k) {
    if (bits_[k] > 1) {
      throw ValidationError("non-binary value " + std::to_string(+bits_[k]) +
                            " at position " + std::to_string(k + 1));
    }
    ones_ += bits_[k];
  }
}

BinaryVector BinaryVector::from_ints(const std::vector<int>& values) {
  std::vector<std::uint8_t> bits;
  bits.reserve(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] != 0 && values[k] != 1) {
      throw ValidationError("non-binary value " + std::to_string(values[k]) +
                            " at position " + std::to_string(k + 1));
    }
    bits.push_back(static_cast<std::uint8_t>(values[k]));
  }
  return BinaryVector(std::move(bits));
}

OccurrenceProbs OccurrenceProbs::from_table(const ContingencyTable& t) {
  const double m = static_cast<double>(t.m());
  return OccurrenceProbs{(t.n1 + t.n2) / m, (t.n1 + t.n3) / m};
}

void OccurrenceProbs::validate() const {
  if (!(p_i >= 0.0 && p_i <= 1.0) || !(p_j >= 0.0 && p_j <= 1.0)) {
    throw ValidationError("occurrence probabilities must lie in [0, 1]");
  }
}

const char* engine_name(Engine e) {
  switch (e) {
    case Engine::exact:
      return "exact";
    case Engine::asymptotic:
      return "asymptotic";
    case Engine::bootstrap:
      return "bootstrap";
    case Engine::mca:
      return "mca";
  }
  return "unknown";
}

Engine engine_from_name(const std::string& name) {
  if (name == "exact") return Engine::exact;
  if (name == "asymptotic") return Engine::asymptotic;
  if (name == "bootstrap") return Engine::bootstrap;
  if (name == "mca") return Engine::mca;
  throw ValidationError("unknown engine '" + name +
                        "' (expected exact|asymptotic|bootstrap|mca)");
}

}  // namespace jaccard
