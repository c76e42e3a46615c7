#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pivotclr/table.hpp"

namespace pivotclr {

// Token-id map with a fixed reserved block. Unknown lookups fall back to
// [UNK]; reserved ids are never reassigned.
class Vocabulary {
 public:
  static constexpr std::int32_t kPadId = 0;
  static constexpr std::int32_t kClsId = 1;
  static constexpr std::int32_t kSepId = 2;
  static constexpr std::int32_t kUnkId = 3;
  static constexpr std::int32_t kNullId = 4;
  static constexpr std::size_t kReservedCount = 5;

  static constexpr const char* kPadToken = "[PAD]";
  static constexpr const char* kClsToken = "[CLS]";
  static constexpr const char* kSepToken = "[SEP]";
  static constexpr const char* kUnkToken = "[UNK]";
  static constexpr const char* kNullToken = "[NULL]";

  // Reserved tokens only.
  Vocabulary();

  // Whitespace-split, lowercased tokens with frequency >= min_freq get ids
  // after the reserved block, ordered by descending frequency then
  // lexicographically. Tokens spelling a reserved literal are skipped.
  static Vocabulary build(const std::vector<std::string>& corpus, std::size_t min_freq);

  // Id for a lowercased token; [UNK] when absent. Reserved literals must be
  // matched case-sensitively by the caller (encode does this).
  std::int32_t id_of(std::string_view token) const;
  const std::string& token_of(std::int32_t id) const;  // throws on bad id
  std::size_t size() const { return id_to_token_.size(); }

  // Text file of "token<TAB>id" lines sorted by id.
  void save(const std::filesystem::path& path) const;
  static Vocabulary load(const std::filesystem::path& path);

  bool operator==(const Vocabulary& other) const { return id_to_token_ == other.id_to_token_; }

 private:
  void insert(std::string token);
  std::unordered_map<std::string, std::int32_t> token_to_id_;
  std::vector<std::string> id_to_token_;
};

// Fixed-length token ids plus a parallel 1/0 attention mask. ids[0] is [CLS],
// the mask is a prefix of ones, and every pad position holds [PAD].
struct TokenSequence {
  std::vector<std::int32_t> ids;
  std::vector<std::uint8_t> mask;

  std::size_t real_length() const;
};

// "header v1 v2 ..." with single spaces; null cells render as "[NULL]".
std::string serialize_column(const std::string& header, const std::vector<CellValue>& values);

// "[CLS] c1 [SEP] c2 [SEP] ... cN [SEP]" over the table's columns in order.
std::string serialize_table(const Table& t);

// Whitespace tokens mapped to ids: reserved literals case-sensitively first,
// everything else lowercased then looked up (missing -> [UNK]). Sequences
// longer than max_len are cut to max_len with the last kept position forced
// to [SEP]; shorter ones are padded.
TokenSequence encode(const std::string& text, const Vocabulary& vocab, std::size_t max_len);

// Tokens for the non-pad positions of a sequence.
std::vector<std::string> decode(const TokenSequence& seq, const Vocabulary& vocab);

std::vector<std::string> whitespace_tokens(std::string_view text);
std::string lowercase_ascii(std::string_view s);

}  // namespace pivotclr
