#pragma once

#include "plr/model.hpp"
#include "plr/oracle.hpp"

#include <string>
#include <string_view>

namespace plr {

inline constexpr std::string_view kFormatHeader = "plr-format 1";

struct PolicyDocument {
  FullConcept policy;
  std::string id;
  std::string label;
};

// All parsers accept the line-oriented text syntax or its JSON mirror (input
// starting with '{'). The "plr-format 1" header is optional on input and
// always written on output.
KnowledgeBase parse_kb(std::string_view text);
ExternalOntology parse_ontology(std::string_view text);
FullConcept parse_policy(std::string_view text);
PolicyDocument parse_policy_document(std::string_view text);

std::string serialize_kb(const KnowledgeBase &kb);
std::string serialize_ontology(const ExternalOntology &o);
std::string serialize_policy(const PolicyDocument &doc);
std::string serialize_policy(const FullConcept &c);

std::string serialize_kb_json(const KnowledgeBase &kb);
std::string serialize_ontology_json(const ExternalOntology &o);
std::string serialize_policy_json(const PolicyDocument &doc);
std::string serialize_policy_json(const FullConcept &c);

// Single-line expression syntax, no header.
std::string to_string(const SimpleConcept &c);
std::string to_string(const FullConcept &c);
std::string to_string(const Axiom &a);

std::string read_file(const std::string &path);
void write_file(const std::string &path, std::string_view content);

} // namespace plr
