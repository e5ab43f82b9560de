"""
Evaluate the Cartan-Vranceanu Legendre curves as written and search nearby
sign and placement variants for one that is actually Legendre and unit speed.
"""

from biharmonic_tanno.cartan_vranceanu import CVParams, cartan_vranceanu

for l, m in ((2, 2), (2, 4)):
    params = CVParams(l, m)
    *_, rep = cartan_vranceanu(params)
    print(f"(l, m) = ({l}, {m}): alpha^2 = {params.alpha2:.6f}, beta = {params.beta:.6f}")
    for c in rep.checks:
        print(f"  {c.name:<72} {c.residual:.3e}  {c.note}")
    for key, val in rep.values.items():
        if key.startswith("variant["):
            print(f"  {key[8:-1]:<40} unit {val['unit_speed']:.2e}  legendre {val['legendre']:.2e}"
                  f"  {'vanishes' if val['vanishes'] else ''}")
    print()
