"""Framework files, supercells, fragments, and SVG pictures."""

import pathlib
import tempfile

import crystalflex as cf

out_dir = pathlib.Path(tempfile.mkdtemp(prefix="crystalflex_demo_"))
kagome = cf.builtin_framework("kagome")

# Frameworks serialize to a small JSON document and round-trip exactly.
path = out_dir / "kagome.json"
cf.save_framework(kagome, path)
print("wrote", path)
print(cf.serialize_framework(kagome)[:320], "...\n")

restored = cf.load_framework(path)
print("round-trip ok:", (restored.positions == kagome.positions).all())

# A 2x2 supercell has four copies of every class; the strict count still
# closes and the alternating mechanism survives.
big = cf.supercell(kagome, (2, 2))
print("\n2x2 supercell:", big.vertex_count, "vertices,", big.edge_count, "edges")
rep = cf.analyze_counts(big, cf.matrix_space("zero", 2))
print(f"supercell strict counts: m={rep.mechanisms} s={rep.stresses} "
      f"(residual {rep.identity_residual})")

# Fragments place finite pieces for inspection or rendering.
frag = cf.fragment(kagome, [(0, 2), (0, 2)])
print(f"\n2x2 fragment: {len(frag.points)} points, {len(frag.edges)} internal bars, "
      f"{len(frag.dangling)} bars leaving the box")

svg_path = out_dir / "kagome_3x3.svg"
svg_path.write_text(cf.render_svg(kagome, [(0, 3), (0, 3)]))
print("wrote", svg_path)

# The full text report in one call.
print()
print(cf.emit_report(cf.analyze_framework(kagome, name="kagome", characters=True), "text"))
