"""Smith normal form over the valuation ring and symmetric congruence
diagonalization, with witnesses recomposing the input exactly.
"""

from nonarch import FieldParams, MatF, RandomStream, smith_normal_form, sym_diagonalize, uniform_integer

q3 = FieldParams("padic", 3, 12)


def random_matrix(field, rng, n, symmetric=False):
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i if symmetric else 0, n):
            k = int(rng.child("k", i, j).integers(-3, 4))
            e = uniform_integer(field, rng.child("u", i, j)).shift(k)
            rows[i][j] = e
            if symmetric:
                rows[j][i] = e
    return MatF.from_rows(field, rows)

print("== Smith normal form ==")
A = MatF.from_rows(
    q3,
    [
        [q3.zero(), q3.uniformizer_pow(1)],
        [q3.uniformizer_pow(-1), q3.zero()],
    ],
)
res = smith_normal_form(A)
print("singular exponents of [[0, pi], [pi^-1, 0]]:", res.sing)
print("A = a * diag(pi^-k) * b with a, b in GL(2, O_F):",
      res.recompose().agrees(A), res.a.is_gl(), res.b.is_gl())

rng = RandomStream(2024)
B = random_matrix(q3, rng.child("m"), 4)
resB = smith_normal_form(B)
print("random 4x4: sing =", resB.sing, " recomposes:", resB.recompose().agrees(B))

print("\n== symmetric congruence diagonalization ==")
S = MatF.from_rows(q3, [[q3.zero(), q3.one()], [q3.one(), q3.zero()]])
d = sym_diagonalize(S)
print("the hyperbolic plane splits into classes:", d.class_labels())
print("g * diag * g^t recomposes:", d.recompose().agrees(S))

T = random_matrix(q3, rng.child("s"), 4, symmetric=True)
dT = sym_diagonalize(T)
print("random symmetric 4x4 classes:", dT.class_labels(),
      " recomposes:", dT.recompose().agrees(T))

# two eps-twisted entries at one level are congruent to two plain ones
eps = q3.eps()
E = MatF.diagonal(q3, [eps, eps])
print("diag(eps, eps) canonicalizes to:", sym_diagonalize(E).class_labels())
