# Dimensions of the Schur functor cover of S(2, 2) in characteristic 2 and 3.

import pandas as pd

from qh_covers.Core.ring_arith import CoefficientDomain
from qh_covers.Covers.cover import CoverSpec
from qh_covers.Covers.dimensions import domdim_algebra, hn_dim_proj, hn_dim_standard, inf_domdim_standards
from qh_covers.Schur.schur_algebra import schur_algebra, schur_heredity_chain

CAP = 6

rows = []
for ring in ["f2", "f3"]:
    data = schur_algebra(2, 2, CoefficientDomain.parse(ring))
    chain = schur_heredity_chain(data)
    cover = CoverSpec.from_idempotent(data.algebra, data.idempotent, chain=chain)
    rows.append({
        "ring": ring,
        "chain": " > ".join(chain.weights),
        "domdim": str(domdim_algebra(cover, CAP).value),
        "hn_proj": str(hn_dim_proj(cover, CAP).value),
        "hn_standard": str(hn_dim_standard(cover, chain, CAP).value),
        "inf_standards": str(inf_domdim_standards(cover.algebra, cover, chain, CAP).value),
    })

#Over F_3 the symmetric group algebra of S_2 is semisimple and every dimension is infinite.
print(pd.DataFrame(rows).to_string(index=False))
