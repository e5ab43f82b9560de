"""
Geodesics of the flat Hopf cylinder, sorted by how they sit in the sphere.
Direction c1 xi + c2 x_u: c1 = 0 is the biharmonic base curve, c2 = 0 a
Reeb orbit, c2 kappa = 2 c1 a harmonic ray, and the rest are neither.
"""

import numpy as np

from biharmonic_tanno import curve_engine as ce
from biharmonic_tanno.connections import Oracle
from biharmonic_tanno.generators import cylinder_geodesic, hopf_cylinder, proposition_tau
from biharmonic_tanno.sasakian import TannoStructure

st = TannoStructure(0.5)
patch, oracle = hopf_cylinder(st), Oracle(st)
s = np.linspace(0, 6, 8)

k = st.kappa
ray = 1 / np.sqrt(1 + k**2 / 4)
directions = [(0.0, 1.0), (1.0, 0.0), (k * ray / 2, ray), (0.6, 0.8), (-0.6, 0.8), (0.8, -0.6)]

print("    c1       c2     |tau| pred  oracle     |tau2| pred  oracle")
for c1, c2 in directions:
    tau, tau2 = proposition_tau(st, c1, c2)
    prof = ce.tension_profile(st, cylinder_geodesic(patch, c1, c2), s, oracle)
    print(f"{c1:7.4f}  {c2:7.4f}   {tau:9.6f}  {prof.tension_norms.max():9.6f}   "
          f"{tau2:9.6f}  {prof.bitension_norms.max():9.6f}")
