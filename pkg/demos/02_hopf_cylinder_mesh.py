"""
Build the biharmonic Hopf cylinder, confirm it closes up on its period
lattice, and write a triangulated period cell as an OBJ file after
stereographic projection.

    python3 demos/02_hopf_cylinder_mesh.py [a] [out.obj]
"""

import sys

import numpy as np

from biharmonic_tanno import export
from biharmonic_tanno.ambient import inner
from biharmonic_tanno.generators import cylinder_pde_residuals, hopf_cylinder, lattice
from biharmonic_tanno.sasakian import TannoStructure

a = float(sys.argv[1]) if len(sys.argv) > 1 else 0.5
out = sys.argv[2] if len(sys.argv) > 2 else "hopf_cylinder.obj"
st = TannoStructure(a)
patch = hopf_cylinder(st)

u, v = np.meshgrid(np.linspace(-3, 3, 20), np.linspace(-3, 3, 20))
r1, r2 = cylinder_pde_residuals(st, patch, u, v)
print(f"PDE residuals on a 20x20 grid: {np.abs(r1).max():.1e}, {np.abs(r2).max():.1e}")

xu, xv = patch.partial(u, v, 1, 0), patch.partial(u, v, 0, 1)
print(f"<x_u,x_u> - 1/a: {np.abs(inner(xu, xu) - 1 / a).max():.1e}   "
      f"<x_v,x_v> - 1/a^2: {np.abs(inner(xv, xv) - 1 / a**2).max():.1e}   "
      f"<x_u,x_v>: {np.abs(inner(xu, xv)).max():.1e}")

lat = lattice(st)
print("lattice w1 =", np.round(lat.w1, 6), " w2 =", np.round(lat.w2, 6))
print("phase increments:\n", np.round(lat.phases(st) / (2 * np.pi), 12), "(units of 2 pi)")

uv, pts = export.cylinder_grid(patch, 48)
with open(out, "w") as fh:
    fh.write(export.mesh_obj(pts, comment=f"hopf cylinder a={a}"))
print(f"wrote {pts.shape[0] ** 2} vertices and {len(export.grid_faces(pts.shape[0]))} triangles to {out}")
