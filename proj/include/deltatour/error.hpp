#pragma once

#include <stdexcept>
#include <string>

namespace deltatour {

enum class ErrorCode {
  LoopEdge,
  ParallelEdge,
  DanglingVertexId,
  Disconnected,
  PointNotOnGraph,
  DegenerateStep,
  TooShort,
  NormalizationFailed,
  NotNice,
  DeltaTooSmall,
  DeltaOutOfRange,
  NotAVertexCover,
  NotCubic,
  NotConnected,
  NotDisjointCycles,
  BadEdgeInteraction,
  NotSplit,
  TrivialInstance,
  Complete,
  NotDominating,
  NotATour,
  BadK,
  NotCubicConstraintGraph,
  OddDegree,
  TooLarge,
  Overflow,
  Parse,
  InvalidTour,
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::LoopEdge: return "LoopEdge";
    case ErrorCode::ParallelEdge: return "ParallelEdge";
    case ErrorCode::DanglingVertexId: return "DanglingVertexId";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::PointNotOnGraph: return "PointNotOnGraph";
    case ErrorCode::DegenerateStep: return "DegenerateStep";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::NormalizationFailed: return "NormalizationFailed";
    case ErrorCode::NotNice: return "NotNice";
    case ErrorCode::DeltaTooSmall: return "DeltaTooSmall";
    case ErrorCode::DeltaOutOfRange: return "DeltaOutOfRange";
    case ErrorCode::NotAVertexCover: return "NotAVertexCover";
    case ErrorCode::NotCubic: return "NotCubic";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::NotDisjointCycles: return "NotDisjointCycles";
    case ErrorCode::BadEdgeInteraction: return "BadEdgeInteraction";
    case ErrorCode::NotSplit: return "NotSplit";
    case ErrorCode::TrivialInstance: return "TrivialInstance";
    case ErrorCode::Complete: return "Complete";
    case ErrorCode::NotDominating: return "NotDominating";
    case ErrorCode::NotATour: return "NotATour";
    case ErrorCode::BadK: return "BadK";
    case ErrorCode::NotCubicConstraintGraph: return "NotCubicConstraintGraph";
    case ErrorCode::OddDegree: return "OddDegree";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::InvalidTour: return "InvalidTour";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace deltatour
