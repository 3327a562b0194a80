#pragma once

#include <string>

#include "chaincalc/abelian.hpp"
#include "chaincalc/validation.hpp"

namespace chaincalc {

// Character data of one stabilizer: the full character group together with
// the characters of its (finite) component group and the pullback along the
// component projection.
struct GroupDatum {
    std::string name;
    FgAbelianGroup char_group;
    FgAbelianGroup com_char_group;
    AbHom com_pullback; // com_char_group -> char_group

    GroupDatum(std::string name_, FgAbelianGroup chars, FgAbelianGroup com_chars, AbHom pullback)
        : name(std::move(name_)),
          char_group(std::move(chars)),
          com_char_group(std::move(com_chars)),
          com_pullback(std::move(pullback)) {}
};

// A character of the normal line: the direction a one-parameter subgroup
// contracts along, recorded as an element of the stabilizer's characters.
struct NormalCharacter {
    GroupDatum group;
    Element value;
};

ValidationReport validate_group_datum(const GroupDatum& g);

// True iff the normal character has infinite order: its image survives in
// the free quotient of the character group.
bool is_fastened(const NormalCharacter& nc);

} // namespace chaincalc
