#pragma once

#include <stdexcept>
#include <string>

namespace tcb {

// Every failure carries a stable code (tested by the CLI) plus the pipeline
// stage that raised it, so callers can report "[stage] message" uniformly.
enum class Err {
    DegenerateTriangle,
    DuplicatePoints,
    CrossingConstraints,
    EmptyDomain,
    DegenerateKnotSet,
    NonConformingMesh,
    VertexNotFound,
    NonChainableEdges,
    EmptyFamily,
    OutOfDomain,
    NonDiskTopology,
    FoldoverUnresolved,
    TooFewCorners,
    RankDeficient,
    SingularSystem,
    NoTrianglesSelected,
    DegenerateJacobian,
    UnconstrainedRigidModes,
    NewtonDiverged,
    NotPositiveDefinite,
    BadConfig,
    IoError,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
public:
    Error(Err code, std::string stage, const std::string& msg)
        : std::runtime_error("[" + stage + "] " + std::string(err_name(code)) + ": " + msg),
          code_(code), stage_(std::move(stage)) {}

    Err code() const { return code_; }
    const std::string& stage() const { return stage_; }

private:
    Err code_;
    std::string stage_;
};

[[noreturn]] inline void fail(Err code, const std::string& stage, const std::string& msg) {
    throw Error(code, stage, msg);
}

inline const char* err_name(Err e) {
    switch (e) {
    case Err::DegenerateTriangle: return "DegenerateTriangle";
    case Err::DuplicatePoints: return "DuplicatePoints";
    case Err::CrossingConstraints: return "CrossingConstraints";
    case Err::EmptyDomain: return "EmptyDomain";
    case Err::DegenerateKnotSet: return "DegenerateKnotSet";
    case Err::NonConformingMesh: return "NonConformingMesh";
    case Err::VertexNotFound: return "VertexNotFound";
    case Err::NonChainableEdges: return "NonChainableEdges";
    case Err::EmptyFamily: return "EmptyFamily";
    case Err::OutOfDomain: return "OutOfDomain";
    case Err::NonDiskTopology: return "NonDiskTopology";
    case Err::FoldoverUnresolved: return "FoldoverUnresolved";
    case Err::TooFewCorners: return "TooFewCorners";
    case Err::RankDeficient: return "RankDeficient";
    case Err::SingularSystem: return "SingularSystem";
    case Err::NoTrianglesSelected: return "NoTrianglesSelected";
    case Err::DegenerateJacobian: return "DegenerateJacobian";
    case Err::UnconstrainedRigidModes: return "UnconstrainedRigidModes";
    case Err::NewtonDiverged: return "NewtonDiverged";
    case Err::NotPositiveDefinite: return "NotPositiveDefinite";
    case Err::BadConfig: return "BadConfig";
    case Err::IoError: return "IoError";
    }
    return "Unknown";
}

} // namespace tcb
