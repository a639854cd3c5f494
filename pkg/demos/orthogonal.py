"""Operators preserving a graded bilinear form.

og(V, B) consists of the graded endomorphisms f with B(f u, v) + chi B(u, f v) = 0,
with the braiding sign coming from moving f past u.  It is closed under every
bracket whose domain it meets.

Run:  python demos/orthogonal.py
"""
from pathlib import Path

from ydlie.dsl import parse_spec
from ydlie.models import check_og_closure, og_subspace

SPECS = Path(__file__).resolve().parent.parent / "specs"

W = parse_spec((SPECS / "c3.yd").read_text()).build()
V, B = W.modules["V"], W.forms["B"]
S = og_subspace(V, B)
print("og(V, B) over C3:")
print(W.export(S))
print("closed under brackets up to n = 3:", check_og_closure(V, B, 3).ok)

# The classical case: three even vectors with the identity form give so(3).
text = """group C1
root 2
module V { 0:3 }
form I on V { 0 0 = 1; 1 1 = 1; 2 2 = 1 }
"""
W = parse_spec(text).build()
S = og_subspace(W.modules["V"], W.forms["I"])
print("so(3):")
print(W.export(S))
print("closed under the commutator:", check_og_closure(W.modules["V"], W.forms["I"], 2).ok)
