#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "jelly/rdf.hpp"
#include "jelly/wire.hpp"

namespace jelly {

/// Splits an IRI into (prefix, name) with prefix ++ name == iri. The prefix
/// ends at the last '#' if present, else at the last '/' after the scheme
/// separator ("://", or ':' when there is no authority). When disabled or
/// when no such delimiter exists, the prefix is empty and the name is the
/// whole IRI.
std::pair<std::string_view, std::string_view> split_iri(std::string_view iri,
                                                        bool prefix_enabled);

enum class LruEvent : std::uint8_t { Hit, New, Evicted };

struct LruResult {
  std::uint32_t id;
  LruEvent event;
};

/// Fixed-capacity value-to-id table with least-recently-used replacement.
/// Ids run from 1 to capacity; New assigns the smallest never-used id,
/// Evicted reuses the id of the least recently used entry. Every lookup,
/// hit or miss, makes the value most recent.
class LruLookup {
public:
  explicit LruLookup(std::uint32_t capacity);

  std::uint32_t capacity() const { return capacity_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(index_.size()); }
  bool enabled() const { return capacity_ > 0; }

  LruResult get_or_insert(std::string_view value);

  /// Live (value, id) pairs from least to most recently used. Test hook.
  std::vector<std::pair<std::string, std::uint32_t>> entries_by_recency() const;

private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };

  static constexpr std::uint32_t kNone = 0xFFFFFFFF;

  void unlink(std::uint32_t slot);
  void link_back(std::uint32_t slot);

  std::uint32_t capacity_;
  std::uint32_t used_ = 0;  // slots ever assigned
  std::uint32_t head_ = kNone;  // least recently used
  std::uint32_t tail_ = kNone;  // most recently used
  std::vector<std::string> values_;
  std::vector<std::uint32_t> prev_, next_;
  std::unordered_map<std::string, std::uint32_t, StringHash, std::equal_to<>> index_;
};

/// Statement-to-rows encoder for one stream. Owns the three lookup tables
/// and the per-position repeat registers; strictly sequential.
class Encoder {
public:
  /// Validates the options; throws CodecError when they are out of bounds.
  explicit Encoder(wire::StreamOptions options);

  const wire::StreamOptions& options() const { return options_; }

  /// Encodes one statement as zero or more lookup-entry rows followed by
  /// exactly one statement row. The first call also prepends the options
  /// row. With use_repeat, a term equal to the one last seen in the same
  /// position collapses to a repeat marker; terms inside quoted triples
  /// never do.
  std::vector<wire::StreamRow> encode(const Statement& s, bool use_repeat = true);

  /// Appends the encoding of `s` to `out` (same contract as encode).
  void encode_into(const Statement& s, bool use_repeat,
                   std::vector<wire::StreamRow>& out);

  /// The header row. Streams with no statements still must carry it.
  wire::StreamRow options_row() const { return wire::StreamRow(options_); }
  bool options_emitted() const { return options_emitted_; }

private:
  wire::WireTerm encode_term(const Term& t, std::vector<wire::StreamRow>& out,
                             int depth);
  void check_statement(const Statement& s) const;
  void check_term(const Term& t, int depth) const;

  wire::StreamOptions options_;
  LruLookup prefixes_;
  LruLookup names_;
  LruLookup datatypes_;
  std::optional<Term> last_subject_, last_predicate_, last_object_;
  std::optional<GraphName> last_graph_;
  bool options_emitted_ = false;
};

/// Rows-to-statements decoder for one stream. Lookup state is three flat
/// id-indexed arrays updated by entry rows; strictly sequential.
class Decoder {
public:
  Decoder() = default;

  /// Options received so far; unset until the first row arrives.
  const std::optional<wire::StreamOptions>& options() const { return options_; }

  /// Processes rows in order, returning the statements they carry. The
  /// first row of the stream must be the options row. Throws CodecError on
  /// protocol violations (repeat with no context, unknown or out-of-range
  /// ids, duplicate or missing options).
  std::vector<Statement> decode(std::span<const wire::StreamRow> rows);
  std::vector<Statement> decode(const wire::StreamFrame& frame) {
    return decode(std::span<const wire::StreamRow>(frame.rows));
  }

  /// Appends decoded statements to `out` instead of returning them.
  void decode_into(std::span<const wire::StreamRow> rows, std::vector<Statement>& out);

  /// Concatenation of the values behind (prefix_id, name_id); id 0
  /// contributes the empty string. Throws CodecError for unassigned nonzero
  /// ids and when both ids are 0.
  std::string resolve_iri(std::uint32_t prefix_id, std::uint32_t name_id) const;

private:
  class Table {
   public:
    void configure(std::uint32_t max_size) { max_size_ = max_size; }
    void set(std::uint32_t id, std::string value, const char* what);
    const std::string& get(std::uint32_t id, const char* what) const;
    bool assigned(std::uint32_t id) const {
      return id >= 1 && id <= values_.size() && assigned_[id - 1];
    }

   private:
    std::uint32_t max_size_ = 0;
    std::vector<std::string> values_;
    std::vector<bool> assigned_;
  };

  Term decode_term(const wire::WireTerm& t, int position, int depth) const;
  void apply_entry(const wire::LookupEntry& e);

  std::optional<wire::StreamOptions> options_;
  Table prefixes_;
  Table names_;
  Table datatypes_;
  std::optional<Term> last_subject_, last_predicate_, last_object_;
  std::optional<GraphName> last_graph_;
};

}  // namespace jelly
