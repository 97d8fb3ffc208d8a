#include "sbill/error.hpp"

namespace sbill {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::TooFewVertices: return "TooFewVertices";
    case Errc::SelfIntersecting: return "SelfIntersecting";
    case Errc::CollinearTriple: return "CollinearTriple";
    case Errc::DegenerateEdge: return "DegenerateEdge";
    case Errc::SingularMatrix: return "SingularMatrix";
    case Errc::SingleTable: return "SingleTable";
    case Errc::UnknownName: return "UnknownName";
    case Errc::BadKiteParams: return "BadKiteParams";
    case Errc::ParseError: return "ParseError";
    case Errc::UnrealizableBranch: return "UnrealizableBranch";
    case Errc::InconclusiveInput: return "InconclusiveInput";
    case Errc::InfiniteC: return "InfiniteC";
    case Errc::SeedHitsVertex: return "SeedHitsVertex";
    case Errc::Budget: return "Budget";
    case Errc::FNotClosed: return "FNotClosed";
    case Errc::DegenerateAtBoundary: return "DegenerateAtBoundary";
    case Errc::DyadicInput: return "DyadicInput";
    case Errc::DyadicSeed: return "DyadicSeed";
    case Errc::AllOnes: return "AllOnes";
    case Errc::ParallelTangents: return "ParallelTangents";
    case Errc::RootFindFailure: return "RootFindFailure";
    case Errc::NotConverged: return "NotConverged";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace sbill
