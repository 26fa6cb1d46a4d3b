#pragma once

#include <stdexcept>
#include <string>

#include "stseq/design.hpp"

// Text formats.
//
// Design file:
//   line 1:  <kind> <v> <b>      kind in {sts, psts}
//   then exactly b lines of three space-separated 0-based point indices in
//   strictly increasing order. '#'-prefixed lines and blank lines are
//   ignored anywhere.
//
// Sequencing file:
//   one line of v space-separated 0-based point indices (a permutation of
//   [0, v)), plus optional '# key=value ...' metadata comment lines
//   (recognized keys: method, ell, seed).

namespace stseq {

// Parse failure; line is 1-based within the input text.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

TripleSystem load_design(const std::string& text);
std::string store_design(const TripleSystem& system,
                         const std::string& comment = "");

Sequencing load_sequencing(const std::string& text);
std::string store_sequencing(const Sequencing& seq);

// Convenience wrappers; throw std::runtime_error on I/O failure.
TripleSystem read_design_file(const std::string& path);
void write_design_file(const std::string& path, const TripleSystem& system,
                       const std::string& comment = "");
Sequencing read_sequencing_file(const std::string& path);
void write_sequencing_file(const std::string& path, const Sequencing& seq);

}  // namespace stseq
