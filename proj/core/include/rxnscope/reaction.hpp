//
// Project rxnscope - Copyright 2026 The rxnscope Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef RXNSCOPE_REACTION_HPP_
#define RXNSCOPE_REACTION_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace rxnscope {

enum class ConditionRole {
  kReagent,
  kSolvent,
  kTemperature,
  kTime,
  kYield,
  kAddInfo,
};

std::string_view to_string(ConditionRole role);
std::optional<ConditionRole> condition_role_from_string(std::string_view s);

struct ConditionItem {
  ConditionRole role = ConditionRole::kAddInfo;
  std::string text;
  std::optional<std::string> smiles;
  std::optional<std::string> label;

  bool operator==(const ConditionItem &) const = default;
};

struct MoleculeEntry {
  std::string smiles;
  std::optional<std::string> label;

  bool operator==(const MoleculeEntry &) const = default;
};

struct ReactionRecord {
  std::string reaction_id;
  std::vector<MoleculeEntry> reactants;
  std::vector<ConditionItem> conditions;
  std::vector<MoleculeEntry> products;
  std::vector<std::string> additional_info;

  bool operator==(const ReactionRecord &) const = default;
};

struct ReactionDocument {
  std::vector<ReactionRecord> reactions;
  std::vector<std::string> text_description;

  bool operator==(const ReactionDocument &) const = default;
};

// Conditions -----------------------------------------------------------------

/// Keyword tables for condition interpretation.
class ConditionLexicon {
public:
  /// {"solvents": {name: smiles}, "reagents": [names],
  ///  "reagent_smiles": {name: smiles}}; the last key is optional.
  static ConditionLexicon from_json(const nlohmann::json &j);
  static ConditionLexicon from_file(const std::filesystem::path &path);
  static const ConditionLexicon &defaults();

  /// Case-insensitive lookups.
  std::optional<std::string> solvent_smiles(std::string_view name) const;
  bool is_reagent(std::string_view name) const;
  std::optional<std::string> reagent_smiles(std::string_view name) const;

private:
  std::map<std::string, std::string> solvents_;
  std::set<std::string> reagents_;
  std::map<std::string, std::string> reagent_smiles_;
};

/// Splits a condition annotation on commas and semicolons and assigns each
/// piece a role. Reagent pieces naming alternatives ("B17 or B27") yield one
/// item per alternative, all sharing the verbatim text.
std::vector<ConditionItem> classify_condition(std::string_view text,
                                              const ConditionLexicon &lexicon);

struct ConditionResidue {
  std::string label;
  ConditionItem item;
};

struct AlignedRecords {
  std::vector<ReactionRecord> records;
  std::vector<ConditionResidue> residue;
  std::vector<std::string> warnings;
};

/// conditions = shared ++ per_variant[product label], without duplicates by
/// (role, text, label). Items for labels no record carries go to residue.
AlignedRecords align_conditions(
    const std::vector<ConditionItem> &shared,
    const std::map<std::string, std::vector<ConditionItem>> &per_variant,
    std::vector<ReactionRecord> records);

// Tables ---------------------------------------------------------------------

struct RGroupTableRow {
  int entry = 0;
  std::map<std::string, std::string> values;
  std::map<std::string, std::string> metadata;

  bool operator==(const RGroupTableRow &) const = default;
};

/// First non-blank line is the header. Cells are separated by tabs or runs
/// of two or more spaces (single spaces when a line has neither). Throws
/// TableParseError.
std::vector<RGroupTableRow> parse_rgroup_table(std::string_view text);

// Validation and JSON ---------------------------------------------------------

struct RecordIssue {
  std::string path;
  std::string message;

  bool operator==(const RecordIssue &) const = default;
};

/// Template records (any placeholder in their molecules) may have empty
/// sides; every SMILES must parse and reaction ids must be unique.
std::vector<RecordIssue> validate_records(
    const std::vector<ReactionRecord> &records);

nlohmann::ordered_json encode_record(const ReactionRecord &r);
nlohmann::ordered_json encode_document(const ReactionDocument &doc);
std::string encode_document_text(const ReactionDocument &doc, int indent = 2);

/// Throws DecodeError naming the offending path.
ReactionRecord decode_record(const nlohmann::json &j,
                             const std::string &path = "");
ReactionDocument decode_document(const nlohmann::json &j);
ReactionDocument decode_document_text(std::string_view text);

}  // namespace rxnscope

#endif  // RXNSCOPE_REACTION_HPP_
