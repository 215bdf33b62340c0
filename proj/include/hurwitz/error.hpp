#pragma once

#include <stdexcept>
#include <string>

namespace hurwitz {

enum class Errc {
    DegreeMismatch,
    TrivialPartition,
    EulerObstruction,
    WrongArity,
    BadParams,
    DuplicateLocation,
    DegenerateTriple,
    IllConditioned,
    RootFindingFailure,
    InconsistentReport,
    ParseError,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::DegreeMismatch: return "DegreeMismatch";
        case Errc::TrivialPartition: return "TrivialPartition";
        case Errc::EulerObstruction: return "EulerObstruction";
        case Errc::WrongArity: return "WrongArity";
        case Errc::BadParams: return "BadParams";
        case Errc::DuplicateLocation: return "DuplicateLocation";
        case Errc::DegenerateTriple: return "DegenerateTriple";
        case Errc::IllConditioned: return "IllConditioned";
        case Errc::RootFindingFailure: return "RootFindingFailure";
        case Errc::InconsistentReport: return "InconsistentReport";
        case Errc::ParseError: return "ParseError";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

} // namespace hurwitz
