#pragma once

#include <stdexcept>
#include <string>

namespace cuecoach {

/// Base for every domain error raised by the library. The stage tag names
/// the pipeline step that failed ("physics", "recommender", "tuner", ...).
class Error : public std::runtime_error {
 public:
  Error(std::string code, std::string stage, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)), stage_(std::move(stage)) {}

  const std::string& code() const { return code_; }
  const std::string& stage() const { return stage_; }

 private:
  std::string code_;
  std::string stage_;
};

#define CUECOACH_DEFINE_ERROR(Name, Code, Stage)                      \
  class Name : public ::cuecoach::Error {                             \
   public:                                                            \
    explicit Name(const std::string& message)                         \
        : ::cuecoach::Error(Code, Stage, message) {}                  \
  }

CUECOACH_DEFINE_ERROR(InvalidInput, "invalid_input", "input");
CUECOACH_DEFINE_ERROR(EmptyInput, "empty_input", "input");
CUECOACH_DEFINE_ERROR(PlacementFailed, "placement_failed", "game");
CUECOACH_DEFINE_ERROR(ModelMissing, "model_missing", "tuner");
CUECOACH_DEFINE_ERROR(LMUnavailable, "lm_unavailable", "lm");
CUECOACH_DEFINE_ERROR(ParseFailure, "parse_failure", "recommender");
CUECOACH_DEFINE_ERROR(NonFiniteLoss, "non_finite_loss", "training");
CUECOACH_DEFINE_ERROR(DatasetTooSmall, "dataset_too_small", "harness");
CUECOACH_DEFINE_ERROR(UnknownAgent, "unknown_agent", "agent");

/// Wraps a failure raised while an agent chose a shot during a game.
class AgentError : public Error {
 public:
  AgentError(int turn, const std::string& message)
      : Error("agent_error", "agent", "turn " + std::to_string(turn) + ": " + message),
        turn_(turn) {}
  int turn() const { return turn_; }

 private:
  int turn_;
};

}  // namespace cuecoach
