#include "chaincalc/group_datum.hpp"

#include "chaincalc/errors.hpp"

namespace chaincalc {

ValidationReport validate_group_datum(const GroupDatum& g) {
    ValidationReport r;
    if (!g.com_char_group.is_finite())
        r.add("com-infinite", g.name + ": component character group must be finite");
    if (!(g.com_pullback.source() == g.com_char_group))
        r.add("pullback-source", g.name + ": com_pullback source is not com_char_group");
    if (!(g.com_pullback.target() == g.char_group))
        r.add("pullback-target", g.name + ": com_pullback target is not char_group");
    if (r.ok() && !g.com_pullback.is_injective())
        r.add("pullback-noninjective",
              g.name + ": com_pullback must be injective (component characters embed)");
    return r;
}

bool is_fastened(const NormalCharacter& nc) {
    return !nc.group.char_group.is_torsion_element(nc.value);
}

} // namespace chaincalc
