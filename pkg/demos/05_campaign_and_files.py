# coding: utf-8

# # Campaigns, quality CSV and mesh files
#
# A campaign is a flat key = value config. The same file drives
# ``nbisect refine``; here it runs in-process.
#
# The curvature criterion looks at elements crossing the hyper-cylinder
# (x-1/2)^2 + (y-1/2)^2 + (z-1/2)^2 = 1, -0.1 <= t <= 1.1, and refines the
# 20% of them where the two-body gravitational potential bends most. The
# grid is shifted and stretched so that the cylinder lies inside it.

# %%

import tempfile
from pathlib import Path

from nbisect.campaign import CampaignConfig, run_campaign
from nbisect.io import read_mesh

work = Path(tempfile.mkdtemp())
config = f"""
generator = kuhn
n = 4
k = 2
origin = -0.75
extent = 2.5
criterion = curvature
fraction = 0.2
iterations = 6
check = true
csv = {work / 'quality.csv'}
output = {work / 'final.mesh'}
"""
result = run_campaign(CampaignConfig.from_text(config))
print((work / "quality.csv").read_text())

# The output file keeps the marks, so refinement can resume from it.

# %%

back = read_mesh(work / "final.mesh")
print(len(back.elements), "elements;", "identical" if back.elements == result.mesh.elements else "differs")
