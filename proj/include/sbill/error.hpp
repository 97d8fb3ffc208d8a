#pragma once

#include <stdexcept>
#include <string>

namespace sbill {

enum class Errc {
  TooFewVertices,
  SelfIntersecting,
  CollinearTriple,
  DegenerateEdge,
  SingularMatrix,
  SingleTable,
  UnknownName,
  BadKiteParams,
  ParseError,
  UnrealizableBranch,
  InconclusiveInput,
  InfiniteC,
  SeedHitsVertex,
  Budget,
  FNotClosed,
  DegenerateAtBoundary,
  DyadicInput,
  DyadicSeed,
  AllOnes,
  ParallelTangents,
  RootFindFailure,
  NotConverged,
  InvalidArgument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace sbill
