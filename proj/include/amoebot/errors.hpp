#pragma once

#include <stdexcept>
#include <string>

namespace amoebot {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define AMOEBOT_ERROR(Name)                 \
  struct Name : Error {                     \
    explicit Name(const std::string& what)  \
        : Error(#Name ": " + what) {}       \
  }

AMOEBOT_ERROR(InvalidArgument);
AMOEBOT_ERROR(DisconnectedStructure);
AMOEBOT_ERROR(DuplicateNode);
AMOEBOT_ERROR(InvalidPinCount);
AMOEBOT_ERROR(StateBudgetExceeded);
AMOEBOT_ERROR(RoundBudgetExhausted);
AMOEBOT_ERROR(EmptyCandidateSet);
AMOEBOT_ERROR(BitIndexOutOfRange);
AMOEBOT_ERROR(LambdaExceedsChain);
AMOEBOT_ERROR(ReferenceNotOccupied);
AMOEBOT_ERROR(EmptySubset);
AMOEBOT_ERROR(PrimeGenerationExhausted);
AMOEBOT_ERROR(InvalidChain);
AMOEBOT_ERROR(ProtocolViolation);  // amoebots disagree on shared control state
AMOEBOT_ERROR(ParseError);
AMOEBOT_ERROR(OracleMismatch);

#undef AMOEBOT_ERROR

}  // namespace amoebot
