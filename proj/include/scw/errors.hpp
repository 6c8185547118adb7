#pragma once

#include <stdexcept>
#include <string>

namespace scw {

struct Error : std::runtime_error {
    Error(const std::string& code, const std::string& what)
        : std::runtime_error(what), code(code) {}
    std::string code;
};

struct RankDeficient : Error {
    explicit RankDeficient(const std::string& what) : Error("RankDeficient", what) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error("DimensionMismatch", what) {}
};

struct UnsupportedParams : Error {
    explicit UnsupportedParams(const std::string& what) : Error("UnsupportedParams", what) {}
};

struct ConfigInvalid : Error {
    explicit ConfigInvalid(const std::string& what) : Error("ConfigInvalid", what) {}
};

struct BracketFailure : Error {
    explicit BracketFailure(const std::string& what) : Error("BracketFailure", what) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error("IoError", what) {}
};

struct OddLength : Error {
    explicit OddLength(const std::string& what) : Error("OddLength", what) {}
};

}  // namespace scw
