"""Toric and planar codes from a lattice of [[4,2,2]]-type tiles.

The same planar network becomes a surface code or a Bacon-Shor code
depending only on which dangling legs are called logical.
"""

from qlego import builders, describe, distance, extract, gauge_fix

for L in (2, 3, 4):
    r = extract(builders.toric(L).build())
    print(f"toric L={L}: n={r.n} true_k={r.true_k} stabilizer rank={r.stabilizers.rank}")

surface = extract(builders.surface(3, 3).build())
print()
print(describe(surface))
print("distance:", distance(surface))

xzzx = extract(builders.xzzx(3, 3).build())
print()
print("XZZX code is CSS:", xzzx.css, "| distance:", distance(xzzx).distance)

# Bacon-Shor: same tiles and edges, different roles
net = builders.bacon_shor(3, 3)
built = net.build()
bs = gauge_fix(extract(built), [builders.bacon_shor_logicals(3, 3, built)])
print()
print(describe(bs))
print("dressed distance:", distance(bs, dressed=True).distance)
