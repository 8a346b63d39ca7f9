#!/usr/bin/env python3
"""Verify the classification data for one family and print the coboundary
class groupings with their machine witnesses.
Run with:  python demos/demo_classification.py [family]
"""

import sys
import warnings

from darbouxlie.classify import (verify_coboundary_classes,
                                 verify_orbit_table, verify_schouten_family,
                                 verify_tree)

warnings.simplefilter("ignore")
stem = sys.argv[1] if len(sys.argv) > 1 else "s6"

table = verify_orbit_table(stem)
print(f"== orbit table {stem}: "
      f"{'all rows pass' if table.passed else 'FAILURES'}")
for row in table.rows:
    mark = "ok " if row.ok else "BAD"
    line = f"  {mark} {row.label:12s} checked {row.dims_checked} points"
    if row.errata:
        line += "   [erratum: " + "; ".join(row.errata) + "]"
    print(line)

from darbouxlie.classify import TREE_FILES, load_family  # noqa: E402

tree_stem = stem if stem in TREE_FILES else "s3"
tree = verify_tree(tree_stem)
print(f"\n== tree {tree_stem}: {len(tree.verified)} branches verified, "
      f"{len(tree.nosol)} no-solution leaves certified")

family = load_family(stem).algebra
bad, errata = verify_schouten_family(family)
print(f"\n== Schouten tables for {family}: {'exact' if not bad else bad}"
      + (f" ({len(errata)} recorded errata)" if errata else ""))

print("\n== coboundary classes")
for rep in verify_coboundary_classes(stem):
    if rep.skipped:
        print(f"  ({rep.params}: no printed grouping, skipped)")
        continue
    for cname, members, hops in rep.witnessed:
        chain = f"   [{'; '.join(hops)}]" if hops else ""
        print(f"  class {cname}: {' '.join(members)}{chain}")
    print(f"  separations certified by necessary conditions: "
          f"{len(rep.separations)}")
