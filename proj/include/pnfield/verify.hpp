#pragma once

// The claim-verification suite. Every property the library relies on is
// checked as an asserted claim; statements from the literature that are
// known or suspected to be wrong are checked and reported without failing
// the run.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "pnfield/counting.hpp"

namespace pnfield::verify {

enum class Status { kAssertedPass, kReported, kFail };

const char* statusName(Status s);

struct ClaimRecord {
  std::string id;
  std::string field;  // "q^n" label, or "-" for field-independent claims
  Status status = Status::kAssertedPass;
  bool discrepancy = false;  // for reported claims: the statement failed
  std::string detail;
};

struct VerifyOptions {
  std::vector<counting::FieldParams> fields;
  std::uint64_t seed = 1;
  std::uint64_t trials = 100;  // character-sum subset pairs per field
  std::uint64_t budget = 1u << 24;
};

struct VerifyReport {
  std::vector<ClaimRecord> claims;

  std::size_t count(Status s) const;
  std::size_t discrepancies() const;
  int exitCode() const { return count(Status::kFail) == 0 ? 0 : 1; }
};

// ResourceError before any work when a field exceeds the budget.
VerifyReport runVerify(const VerifyOptions& opts);

void writeText(std::ostream& out, const VerifyReport& report);
void writeJson(std::ostream& out, const VerifyReport& report);

}  // namespace pnfield::verify
