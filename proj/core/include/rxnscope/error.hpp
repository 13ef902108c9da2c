//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RXNSCOPE_ERROR_HPP_
#define RXNSCOPE_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rxnscope {

/// Base class of every domain failure raised by the toolkit. The kind string
/// is a stable machine-readable tag used by the CLI's JSON error objects.
class Error: public std::runtime_error {
public:
  Error(std::string kind, const std::string &message)
      : std::runtime_error(message), kind_(std::move(kind)) { }

  const std::string &kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

class GraphError: public Error {
public:
  explicit GraphError(const std::string &message)
      : Error("graph_error", message) { }
};

/// SMILES syntax failure; offset is the byte position of the offending
/// character in the input.
class SmilesParseError: public Error {
public:
  SmilesParseError(std::size_t offset, const std::string &message)
      : Error("smiles_parse_error",
              message + " at offset " + std::to_string(offset)),
        offset_(offset) { }

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

class FormulaError: public Error {
public:
  explicit FormulaError(const std::string &message)
      : Error("formula_error", message) { }
};

class StereoError: public Error {
public:
  explicit StereoError(const std::string &message)
      : Error("stereo_error", message) { }
};

class TemplateMismatchError: public Error {
public:
  explicit TemplateMismatchError(const std::string &message)
      : Error("template_mismatch", message) { }
};

class MissingBindingsError: public Error {
public:
  explicit MissingBindingsError(std::vector<std::string> labels);

  const std::vector<std::string> &labels() const noexcept { return labels_; }

private:
  std::vector<std::string> labels_;
};

class TableParseError: public Error {
public:
  TableParseError(int row, const std::string &message)
      : Error("table_parse_error",
              "row " + std::to_string(row) + ": " + message),
        row_(row) { }

  int row() const noexcept { return row_; }

private:
  int row_;
};

/// JSON decode failure; path is a JSON-pointer-like location such as
/// "reactions[0].conditions[1].role".
class DecodeError: public Error {
public:
  DecodeError(std::string path, const std::string &message)
      : Error("decode_error", path + ": " + message), path_(std::move(path)) { }

  const std::string &path() const noexcept { return path_; }

private:
  std::string path_;
};

class FingerprintError: public Error {
public:
  explicit FingerprintError(const std::string &message)
      : Error("fingerprint_error", message) { }
};

}  // namespace rxnscope

#endif  // RXNSCOPE_ERROR_HPP_
