#pragma once

#include <ostream>
#include <string>

#include "alexlab/fpgroup.hpp"
#include "alexlab/laurent.hpp"
#include "alexlab/cli.hpp"

namespace alexlab {

inline void PrintTo(const LaurentPoly& p, std::ostream* os) { *os << to_string(p); }

}  // namespace alexlab

namespace testing_support {

inline std::string corpus(const std::string& name) { return std::string(ALEXLAB_CORPUS_DIR) + "/" + name; }

inline alexlab::GroupPresentation load(const std::string& name) {
  return alexlab::cli::load_presentation(corpus(name));
}

}  // namespace testing_support
