#include "leafbridge/error.hpp"

namespace leafbridge {

namespace {
std::string describe(const std::string& axiom, const std::vector<std::string>& witness) {
  std::string s = axiom + " fails";
  if (!witness.empty()) {
    s += " at (";
    for (std::size_t i = 0; i < witness.size(); ++i) s += (i ? "," : "") + witness[i];
    s += ")";
  }
  return s;
}
}  // namespace

AxiomViolation::AxiomViolation(std::string axiom, std::vector<std::string> witness)
    : PreconditionError(describe(axiom, witness)),
      axiom_(std::move(axiom)),
      witness_(std::move(witness)) {}

}  // namespace leafbridge
