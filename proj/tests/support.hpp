#pragma once

#include "plr/io.hpp"
#include "plr/model.hpp"

#include <string>

namespace plr::test {

inline std::string fixture(const std::string &name) { return std::string(PLR_FIXTURE_DIR) + "/" + name; }

inline KnowledgeBase load_kb(const std::string &name) { return parse_kb(read_file(fixture(name))); }
inline FullConcept load_policy(const std::string &name) { return parse_policy(read_file(fixture(name))); }

inline FullConcept P(const std::string &text) { return parse_policy(text); }
inline SimpleConcept S(const std::string &text) { return parse_policy(text)[0]; }
inline KnowledgeBase K(const std::string &text) { return parse_kb(text); }

} // namespace plr::test
