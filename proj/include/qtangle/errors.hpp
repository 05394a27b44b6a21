#pragma once

#include <stdexcept>
#include <string>

namespace qtangle {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define QTANGLE_DEFINE_ERROR(NAME)                                    \
  struct NAME : Error {                                               \
    explicit NAME(const std::string& what) : Error(#NAME ": " + what) {} \
  }

QTANGLE_DEFINE_ERROR(ZeroVector);
QTANGLE_DEFINE_ERROR(BadDimension);
QTANGLE_DEFINE_ERROR(BadSubset);
QTANGLE_DEFINE_ERROR(BadWord);
QTANGLE_DEFINE_ERROR(BadArity);
QTANGLE_DEFINE_ERROR(BadPair);
QTANGLE_DEFINE_ERROR(BadIndex);
QTANGLE_DEFINE_ERROR(BadParam);
QTANGLE_DEFINE_ERROR(SpectralFailure);
QTANGLE_DEFINE_ERROR(RankOverflow);
QTANGLE_DEFINE_ERROR(NoConvergence);
QTANGLE_DEFINE_ERROR(NotOrthonormal);

#undef QTANGLE_DEFINE_ERROR

}  // namespace qtangle
