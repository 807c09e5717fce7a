#ifndef ONTOFIT_TEXT_HPP_
#define ONTOFIT_TEXT_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

#include "ontofit/syntax.hpp"

namespace ontofit {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& msg);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

Concept parse_concept(std::string_view text);
Ontology parse_ontology(std::string_view text);
ABox parse_abox(std::string_view text);
UCQ parse_ucq(std::string_view text);
ExampleCollection parse_collection(std::string_view text);

std::string serialize(const Ontology& o);
std::string serialize(const ABox& a);
std::string serialize(const CQ& q);
std::string serialize(const UCQ& q);
std::string serialize_collection(const ExampleCollection& e);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace ontofit

#endif  // ONTOFIT_TEXT_HPP_
