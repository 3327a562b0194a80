#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chaincalc/chain_graph.hpp"
#include "chaincalc/errors.hpp"
#include "chaincalc/tame_ring.hpp"

#include "json.hpp"

namespace chaincalc {

// One located problem found while reading a chain file.  `where` is a
// JSON-pointer-style path (or a byte offset for syntax errors), `category`
// one of: syntax, schema, unresolved-reference, well-definedness, invariant.
struct ChainFileError {
    std::string where;
    std::string category;
    std::string message;
    std::string to_string() const { return where + " [" + category + "] " + message; }
};

// Thrown when parsing fails; carries every collected error, so callers can
// report all problems at once.  No partially parsed file escapes.
class chain_file_error : public input_error {
public:
    explicit chain_file_error(std::vector<ChainFileError> errors);
    const std::vector<ChainFileError>& errors() const { return errors_; }

private:
    static std::string render(const std::vector<ChainFileError>& errors);
    std::vector<ChainFileError> errors_;
};

enum class ChainKind { orbit, simple, graph };

// One entry of the chains section.  Orbit entries carry just a character
// group; simple entries a validated two-orbit chain; graph entries a
// reference into the graphs section.
struct ChainEntry {
    ChainKind kind;
    FgAbelianGroup orbit_chars;              // orbit kind
    std::optional<SimpleChainDatum> simple;  // simple kind
    std::string graph_ref;                   // graph kind
};

// One entry of the objects section: either a filtered object over a chain
// (orbit and simple kinds) or a line-bundle assembly over a graph chain.
struct ObjectEntry {
    std::string chain_ref;
    std::optional<FilteredObject> filtered;
    std::optional<LineBundleAssembly> assembly;
};

enum class RingKind { ideal_adic, weighted_free };

struct RingEntry {
    RingKind kind;
    std::optional<IdealAdicPresentation> adic;
    std::optional<WeightedFreePresentation> weighted;
};

struct QuotientEntry {
    std::string chain_ref;
    TameQuotientDatum datum;
};

// A fully validated chain file.  The semantic maps drive computation; the
// normalized source document is kept verbatim so machine output can embed
// the input and still round-trip byte for byte.
struct ChainFile {
    std::map<std::string, FgAbelianGroup> groups;
    std::map<std::string, AbHom> homs;
    std::map<std::string, GroupDatum> stabilizers;
    std::map<std::string, NormalCharacter> normal_characters;
    std::map<std::string, ChainEntry> chains;
    std::map<std::string, ChainGraph> graphs;
    std::map<std::string, ObjectEntry> objects;
    std::map<std::string, RingEntry> rings;
    std::map<std::string, QuotientEntry> quotients;
    std::map<std::string, LiePairing> pairings;
    nlohmann::json document;
};

// Current schema version, required in meta.chaincalc_format.
inline constexpr int chain_file_format_version = 1;

// Parse and validate the given text; `origin` names the source in error
// messages.  Throws chain_file_error with all collected problems.
ChainFile parse_chain_file_text(const std::string& text, const std::string& origin);

// Parse a file from disk.  Throws input_error when unreadable, otherwise as
// parse_chain_file_text.
ChainFile parse_chain_file(const std::string& path);

// Deterministic rendering of the validated document (sorted keys, stable
// integer spelling): the machine output format.
std::string serialize_chain_file(const ChainFile& f);

// Copy of the document with a results section attached, rendered as above.
std::string serialize_with_results(const ChainFile& f, const nlohmann::json& results);

// Path of the named bundled dataset (name + ".json").  Search order:
// $CHAINCALC_DATA_DIR, then <exe_dir>/../share/chaincalc/datasets when
// exe_dir is nonempty, then the built-in source-tree location.  Throws
// input_error when the dataset is found nowhere.
std::string find_dataset(const std::string& name, const std::string& exe_dir = "");

} // namespace chaincalc
