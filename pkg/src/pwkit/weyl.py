"""Weyl groups of the classical families as signed permutation groups,
subspace stabilizers, Reynolds averaging, restriction of invariant
polynomials, surjectivity certificates with the type-D obstruction, and
the averaging/decomposition/lifting pipeline for extending invariants from
a subspace.

All polynomial algebra is exact over the rationals: surjectivity and
obstruction are rank statements and must not depend on floating-point
thresholds.  Type A is realized in k+1 ambient coordinates acting on the
sum-zero hyperplane; the subspace embeddings append trailing zeros.
"""

from fractions import Fraction
from itertools import combinations, permutations, product

__all__ = [
    "SignedPermutation",
    "RootSystemSpec",
    "MultivariatePolynomial",
    "GroupTooLarge",
    "DegreeTooLarge",
    "NotInvariant",
    "NoSolutionAtDegree",
    "ObstructionHit",
    "weyl_group",
    "group_order",
    "stabilizer",
    "restricted_group",
    "reynolds",
    "chevalley_generators",
    "invariant_basis",
    "restrict_poly",
    "surjectivity_certificate",
    "SurjectivityCertificate",
    "rais_decompose",
    "ow1_lift",
]

MAX_GROUP_ORDER = 10**6
MAX_BASIS_DEGREE = 12


class GroupTooLarge(ValueError):
    pass


class DegreeTooLarge(ValueError):
    pass


class NotInvariant(ValueError):
    pass


class NoSolutionAtDegree(ValueError):
    pass


class ObstructionHit(ValueError):
    """The target lies outside the image of the restriction map."""


class SignedPermutation:
    """Signed permutation acting linearly by w e_j = signs[j] e_{perm[j]}.

    perm is the 0-indexed image list; signs is a tuple over {+1, -1}.
    Family A elements carry all-plus signs.
    """

    __slots__ = ("perm", "signs")

    def __init__(self, perm, signs=None):
        self.perm = tuple(perm)
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("perm is not a permutation of 0..k-1")
        self.signs = tuple(signs) if signs is not None else (1,) * len(self.perm)
        if len(self.signs) != len(self.perm) or any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be a +-1 vector matching perm")

    @classmethod
    def identity(cls, k):
        return cls(tuple(range(k)))

    def __len__(self):
        return len(self.perm)

    def __eq__(self, other):
        return self.perm == other.perm and self.signs == other.signs

    def __hash__(self):
        return hash((self.perm, self.signs))

    def __repr__(self):
        return "SignedPermutation(%r, %r)" % (self.perm, self.signs)

    def compose(self, other):
        """self o other as linear maps."""
        perm = tuple(self.perm[other.perm[j]] for j in range(len(other)))
        signs = tuple(other.signs[j] * self.signs[other.perm[j]]
                      for j in range(len(other)))
        return SignedPermutation(perm, signs)

    def inverse(self):
        k = len(self.perm)
        inv = [0] * k
        sg = [1] * k
        for j in range(k):
            inv[self.perm[j]] = j
            sg[self.perm[j]] = self.signs[j]
        return SignedPermutation(tuple(inv), tuple(sg))

    def sign_product(self):
        out = 1
        for s in self.signs:
            out *= s
        return out


class RootSystemSpec:
    """Classical family (A, B, C or D) and rank.

    Ranks below the Dynkin-faithful bounds (A >= 1, B >= 2, C >= 3, D >= 4)
    are still constructible as groups but flagged degenerate.
    """

    _FAITHFUL_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}

    def __init__(self, family, rank):
        family = family.upper()
        if family not in "ABCD" or len(family) != 1:
            raise ValueError("family must be one of A, B, C, D")
        if rank < 1:
            raise ValueError("rank must be >= 1")
        self.family = family
        self.rank = int(rank)

    @property
    def degenerate(self):
        return self.rank < self._FAITHFUL_RANK[self.family]

    @property
    def ambient_vars(self):
        """Number of polynomial variables the group acts on."""
        return self.rank + 1 if self.family == "A" else self.rank

    def __repr__(self):
        return "RootSystemSpec(%s%d)" % (self.family, self.rank)


def group_order(spec):
    k = spec.rank
    fact = 1
    for j in range(2, k + 2 if spec.family == "A" else k + 1):
        fact *= j
    if spec.family == "A":
        return fact
    if spec.family in "BC":
        return 2**k * fact
    return 2 ** (k - 1) * fact


def weyl_group(spec):
    """Complete duplicate-free enumeration of the Weyl group.

    Orders: |W(A_k)| = (k+1)!, |W(B_k)| = |W(C_k)| = 2^k k!,
    |W(D_k)| = 2^{k-1} k!.  Raises GroupTooLarge beyond 10^6 elements.
    """
    if group_order(spec) > MAX_GROUP_ORDER:
        raise GroupTooLarge("order %d exceeds %d" % (group_order(spec),
                                                     MAX_GROUP_ORDER))
    k = spec.ambient_vars
    out = []
    if spec.family == "A":
        for p in permutations(range(k)):
            out.append(SignedPermutation(p))
        return out
    for p in permutations(range(k)):
        for signs in product((1, -1), repeat=k):
            if spec.family == "D":
                prod_ = 1
                for s in signs:
                    prod_ *= s
                if prod_ != 1:
                    continue
            out.append(SignedPermutation(p, signs))
    return out


def _block_size(spec, n):
    """Coordinates spanned by the embedded rank-n subspace."""
    return n + 1 if spec.family == "A" else n


def stabilizer(spec, n, group=None):
    """Elements of W(k) mapping the embedded subspace of rank n to itself.

    With the trailing-zero embedding this means the index block of the
    first n coordinates (n+1 ambient coordinates for family A) is
    preserved setwise; n = 0 gives the whole group.
    """
    if n > spec.rank:
        raise ValueError("n must be <= rank")
    if group is None:
        group = weyl_group(spec)
    block = _block_size(spec, n)
    if n == 0:
        return list(group)
    return [w for w in group
            if all(w.perm[j] < block for j in range(block))]


def restricted_group(spec, n, group=None):
    """Duplicate-free restriction of the stabilizer to the subspace block.

    For families A, B, C this recovers W(n) on the block exactly; for
    family D (n < k) the image is the full hyperoctahedral group of order
    2^n n!, strictly larger than W(D_n): the spare coordinates absorb the
    sign-product constraint.
    """
    block = _block_size(spec, n)
    seen = set()
    out = []
    for w in stabilizer(spec, n, group=group):
        r = SignedPermutation(w.perm[:block], w.signs[:block])
        if r not in seen:
            seen.add(r)
            out.append(r)
    return out


class MultivariatePolynomial:
    """Sparse exact-rational polynomial: exponent tuple -> Fraction."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = int(nvars)
        self.terms = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c != 0:
                    if len(e) != nvars:
                        raise ValueError("exponent arity mismatch")
                    self.terms[tuple(int(a) for a in e)] = c

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def variable(cls, i, nvars):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def __eq__(self, other):
        return (isinstance(other, MultivariatePolynomial)
                and self.nvars == other.nvars and self.terms == other.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MultivariatePolynomial(self.nvars, out)

    def __sub__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) - c
        return MultivariatePolynomial(self.nvars, out)

    def __mul__(self, other):
        if isinstance(other, MultivariatePolynomial):
            out = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = out.get(e, Fraction(0)) + c1 * c2
            return MultivariatePolynomial(self.nvars, out)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c):
        c = Fraction(c)
        return MultivariatePolynomial(
            self.nvars, {e: cc * c for e, cc in self.terms.items()})

    def apply(self, w):
        """Group action (w . p)(x) = p(w^{-1} x).

        Under w e_j = signs[j] e_{perm[j]} the monomial prod x_j^{a_j}
        pulls back to prod (signs[j] x_{perm[j]})^{a_j}.
        """
        out = {}
        for e, c in self.terms.items():
            newe = [0] * self.nvars
            sgn = 1
            for j, a in enumerate(e):
                if a == 0:
                    continue
                newe[w.perm[j]] += a
                if w.signs[j] < 0 and a % 2 == 1:
                    sgn = -sgn
            key = tuple(newe)
            out[key] = out.get(key, Fraction(0)) + sgn * c
        return MultivariatePolynomial(self.nvars, out)

    def restrict(self, nkeep):
        """Substitute x_{nkeep+1} = ... = 0; result lives in nkeep variables."""
        if nkeep > self.nvars:
            raise ValueError("cannot restrict to more variables")
        out = {}
        for e, c in self.terms.items():
            if any(e[nkeep:]):
                continue
            out[e[:nkeep]] = c
        return MultivariatePolynomial(nkeep, out)

    def embed(self, nvars):
        """View in a larger variable ring (trailing exponents zero)."""
        if nvars < self.nvars:
            raise ValueError("embedding must not drop variables")
        pad = (0,) * (nvars - self.nvars)
        return MultivariatePolynomial(
            nvars, {e + pad: c for e, c in self.terms.items()})

    def to_text(self):
        """One term per line: `coeff * x1^a1 x2^a2 ...` (zero powers omitted)."""
        if not self.terms:
            return "0\n"
        lines = []
        for e in sorted(self.terms, key=lambda t: (sum(t), t)):
            c = self.terms[e]
            factors = ["x%d^%d" % (i + 1, a) for i, a in enumerate(e) if a]
            lines.append(str(c) + (" * " + " ".join(factors) if factors else ""))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text, nvars):
        terms = {}
        for line in text.strip().splitlines():
            line = line.strip()
            if not line or line == "0":
                continue
            if "*" in line:
                coeff_s, mono = line.split("*", 1)
            else:
                coeff_s, mono = line, ""
            e = [0] * nvars
            for factor in mono.split():
                name, _, power = factor.partition("^")
                idx = int(name.lstrip("x")) - 1
                e[idx] += int(power) if power else 1
            key = tuple(e)
            terms[key] = terms.get(key, Fraction(0)) + Fraction(coeff_s.strip())
        return cls(nvars, terms)

    def __repr__(self):
        return "MultivariatePolynomial(%d vars, %d terms)" % (
            self.nvars, len(self.terms))


def reynolds(p, group):
    """Group average (1/|W|) sum_w w.p; the projection onto invariants."""
    acc = MultivariatePolynomial.zero(p.nvars)
    for w in group:
        acc = acc + p.apply(w)
    return acc.scale(Fraction(1, len(group)))


def _elementary_symmetric_in_squares(j, nvars):
    terms = {}
    for comb in combinations(range(nvars), j):
        e = [0] * nvars
        for i in comb:
            e[i] = 2
        terms[tuple(e)] = Fraction(1)
    return MultivariatePolynomial(nvars, terms)


def _elementary_symmetric(j, nvars):
    terms = {}
    for comb in combinations(range(nvars), j):
        e = [0] * nvars
        for i in comb:
            e[i] = 1
        terms[tuple(e)] = Fraction(1)
    return MultivariatePolynomial(nvars, terms)


def chevalley_generators(spec):
    """Free generators of the invariant algebra.

    B/C: e_j(x_1^2, ..., x_k^2), j = 1..k.
    D:   e_j(x^2) for j < k together with the Pfaffian x_1 ... x_k.
    A:   e_2, ..., e_{k+1} of the k+1 ambient coordinates (e_1 vanishes on
         the sum-zero hyperplane and is omitted).
    """
    k = spec.rank
    nv = spec.ambient_vars
    if spec.family in "BC":
        return [_elementary_symmetric_in_squares(j, nv) for j in range(1, k + 1)]
    if spec.family == "D":
        gens = [_elementary_symmetric_in_squares(j, nv) for j in range(1, k)]
        gens.append(MultivariatePolynomial(nv, {(1,) * nv: Fraction(1)}))
        return gens
    return [_elementary_symmetric(j, nv) for j in range(2, k + 2)]


def _generator_products(gens, d):
    """All monomials in the generators with total degree <= d, as
    (exponent-vector-over-generators, polynomial) pairs."""
    degs = [g.degree() for g in gens]
    out = []

    def rec(i, remaining, expo, poly):
        if i == len(gens):
            out.append((tuple(expo), poly))
            return
        rec(i + 1, remaining, expo + [0], poly)
        p = poly
        n_max = remaining // degs[i]
        for a in range(1, n_max + 1):
            p = p * gens[i]
            rec(i + 1, remaining - a * degs[i], expo + [a], p)

    rec(0, d, [], MultivariatePolynomial.constant(gens[0].nvars, 1))
    return out


def invariant_basis(spec, d):
    """Vector-space basis of the invariants of degree <= d: the generator
    monomials (the invariant ring is free on the Chevalley generators, so
    these are linearly independent)."""
    if d > MAX_BASIS_DEGREE:
        raise DegreeTooLarge("degree cap is %d" % MAX_BASIS_DEGREE)
    return [poly for _, poly in _generator_products(chevalley_generators(spec), d)]


def restrict_poly(p, nkeep):
    """Coordinate restriction x_{nkeep+1} = ... = x_k = 0."""
    return p.restrict(nkeep)


def _solve_exact(rows, rhs, nunknowns):
    """Gaussian elimination over Q.  rows: list of {col: Fraction}.
    Returns a particular solution (free unknowns at 0) or None."""
    mat = [[row.get(c, Fraction(0)) for c in range(nunknowns)] + [b]
           for row, b in zip(rows, rhs)]
    pivots = []
    ri = 0
    for col in range(nunknowns):
        piv = None
        for rr in range(ri, len(mat)):
            if mat[rr][col] != 0:
                piv = rr
                break
        if piv is None:
            continue
        mat[ri], mat[piv] = mat[piv], mat[ri]
        pv = mat[ri][col]
        mat[ri] = [x / pv for x in mat[ri]]
        for rr in range(len(mat)):
            if rr != ri and mat[rr][col] != 0:
                f = mat[rr][col]
                mat[rr] = [a - f * b for a, b in zip(mat[rr], mat[ri])]
        pivots.append(col)
        ri += 1
        if ri == len(mat):
            break
    for rr in range(ri, len(mat)):
        if mat[rr][nunknowns] != 0:
            return None
    sol = [Fraction(0)] * nunknowns
    for i, col in enumerate(pivots):
        sol[col] = mat[i][nunknowns]
    return sol


def _solve_combination(candidates, target):
    """Exact coefficients c with sum c_i candidates[i] == target, or None."""
    rows_by_mono = {}
    for i, poly in enumerate(candidates):
        for e, c in poly.terms.items():
            row = rows_by_mono.setdefault(e, {})
            row[i] = row.get(i, Fraction(0)) + c
    for e in target.terms:
        rows_by_mono.setdefault(e, {})
    monos = sorted(rows_by_mono)
    rows = [rows_by_mono[e] for e in monos]
    rhs = [target.terms.get(e, Fraction(0)) for e in monos]
    return _solve_exact(rows, rhs, len(candidates))


class SurjectivityCertificate:
    """Outcome of the invariant-restriction rank computation.

    witnesses maps each reachable downstairs basis element (by index) to
    the exact coefficient vector of an upstairs invariant preimage over
    `upstairs_basis`; obstruction lists the indices of unreachable
    downstairs basis elements (their span is the cokernel).
    """

    def __init__(self, spec_k, spec_n, degree, upstairs_basis,
                 downstairs_basis, witnesses, obstruction):
        self.spec_k = spec_k
        self.spec_n = spec_n
        self.degree = degree
        self.upstairs_basis = upstairs_basis
        self.downstairs_basis = downstairs_basis
        self.witnesses = witnesses
        self.obstruction = obstruction

    @property
    def surjective(self):
        return not self.obstruction

    def preimage(self, index):
        coeffs = self.witnesses[index]
        nv = self.upstairs_basis[0].nvars
        acc = MultivariatePolynomial.zero(nv)
        for c, b in zip(coeffs, self.upstairs_basis):
            if c:
                acc = acc + b.scale(c)
        return acc


def surjectivity_certificate(spec_k, spec_n, d):
    """Decide, degree <= d, whether restriction of W(k)-invariants covers
    all W(n)-invariants, producing witnesses or the unreachable span.

    Families A/B/C pairs are surjective; a D -> D pair with n < k leaves
    exactly the downstairs invariants with odd Pfaffian exponent
    unreachable (the upstairs Pfaffian restricts to zero and every
    restricted invariant is even in each coordinate).
    """
    if spec_k.family != spec_n.family:
        raise ValueError("restriction is defined within one family")
    if spec_n.rank > spec_k.rank:
        raise ValueError("need n <= k")
    if d > 10:
        raise DegreeTooLarge("certificate degree cap is 10")
    nkeep = _block_size(spec_k, spec_n.rank)
    up = invariant_basis(spec_k, d)
    down = invariant_basis(spec_n, d)
    restricted = [b.restrict(nkeep) for b in up]
    witnesses = {}
    obstruction = []
    for t, q in enumerate(down):
        sol = _solve_combination(restricted, q)
        if sol is None:
            obstruction.append(t)
        else:
            witnesses[t] = sol
    return SurjectivityCertificate(spec_k, spec_n, d, up, down,
                                   witnesses, obstruction)


def _check_invariant(p, group_elements):
    for w in group_elements:
        if p.apply(w) != p:
            return False
    return True


def rais_decompose(G, spec_k, n, d=None):
    """Write a W_n(k)-invariant polynomial as sum_j p_j G_j over the
    Chevalley generators G_j of the full invariant ring, with each
    coefficient p_j averaged over W_n(k) afterwards (the identity is
    preserved because the G_j are fully invariant).

    The membership solve runs at the degree cap d (default deg G),
    retried with +2 up to 12 before raising NoSolutionAtDegree.  Raises
    NotInvariant when G is not W_n(k)-invariant; a nonzero constant term
    never lies in the generator ideal.
    """
    nv = spec_k.ambient_vars
    if G.nvars != nv:
        raise ValueError("polynomial arity %d does not match %r ambient %d"
                         % (G.nvars, spec_k, nv))
    stab = stabilizer(spec_k, n)
    if not _check_invariant(G, stab):
        raise NotInvariant("input is not invariant under the subspace stabilizer")
    gens = chevalley_generators(spec_k)
    if G.is_zero():
        return [MultivariatePolynomial.zero(nv) for _ in gens]
    if G.constant_term() != 0:
        raise NoSolutionAtDegree("nonzero constant term cannot be decomposed "
                                 "over constant-free generators")
    dcap = d if d is not None else G.degree()
    dcap = max(dcap, G.degree())
    ps = _rais_solve(G, gens, dcap)
    if ps is None:
        # the generators are homogeneous, so ideal membership is graded:
        # a failed solve at deg(G) cannot be rescued by higher-degree
        # coefficients (their contributions truncate away); retrying at
        # d+2 is therefore conclusive already and we raise directly
        raise NoSolutionAtDegree("polynomial is not a generator combination "
                                 "(checked conclusively at degree %d)" % dcap)
    averaged = [reynolds(p, stab) for p in ps]
    acc = MultivariatePolynomial.zero(nv)
    for p, g in zip(averaged, gens):
        acc = acc + p * g
    if acc != G:
        raise AssertionError("averaged decomposition failed to reproduce input")
    return averaged


def _rais_solve(G, gens, dcap):
    nv = G.nvars
    unknowns = []      # (generator index, coefficient exponent)
    columns = []       # polynomial attached to each unknown
    for j, g in enumerate(gens):
        room = dcap - g.degree()
        if room < 0:
            continue
        for e in _monomials_up_to(nv, room):
            unknowns.append((j, e))
            columns.append(MultivariatePolynomial(nv, {e: Fraction(1)}) * g)
    sol = _solve_combination(columns, G)
    if sol is None:
        return None
    ps = [MultivariatePolynomial.zero(nv) for _ in gens]
    for coeff, (j, e) in zip(sol, unknowns):
        if coeff:
            ps[j] = ps[j] + MultivariatePolynomial(nv, {e: coeff})
    return ps


def _monomials_up_to(nvars, d):
    out = []

    def rec(pos, remaining, cur):
        if pos == nvars:
            out.append(tuple(cur))
            return
        for a in range(remaining + 1):
            rec(pos + 1, remaining - a, cur + [a])

    if d >= 0:
        rec(0, d, [])
    return out


def _invariant_preimage(poly, spec_k, spec_n):
    """W(k)-invariant polynomial restricting exactly to `poly`, through the
    surjectivity certificate; None when unreachable."""
    nkeep = _block_size(spec_k, spec_n.rank)
    d = max(poly.degree(), 1)
    if d > 10:
        raise DegreeTooLarge("lift degree cap is 10")
    up = invariant_basis(spec_k, d)
    sol = _solve_combination([b.restrict(nkeep) for b in up], poly)
    if sol is None:
        return None
    q = MultivariatePolynomial.zero(spec_k.ambient_vars)
    for c, b in zip(sol, up):
        if c:
            q = q + b.scale(c)
    return q


def ow1_lift(target, spec_k, spec_n, d=None):
    """Extend a W(n)-invariant polynomial to a W(k)-invariant one with
    exact restriction, by the averaging / decomposition / lifting chain:

    embed the target upstairs, average over the subspace stabilizer, write
    the average over the Chevalley generators with stabilizer-invariant
    coefficients, restrict the coefficients, lift each one through the
    surjectivity certificate, and recombine.  When the average lies
    outside the generator ideal (polynomials, unlike the transform images
    the chain was designed around, can meet a graded obstruction there),
    the whole averaged restriction is lifted through the surjectivity
    certificate directly; either route ends with exact zero residual.

    For a D-family pair a target with odd Pfaffian content is annihilated
    by the averaging (the restricted stabilizer contains all sign
    changes); this raises ObstructionHit, matching the failure of
    surjectivity in that case.
    """
    if spec_k.family != spec_n.family:
        raise ValueError("lift is defined within one family")
    n = spec_n.rank
    nkeep = _block_size(spec_k, n)
    nv_up = spec_k.ambient_vars
    if target.nvars != _block_size(spec_n, n):
        raise ValueError("target arity does not match the downstairs spec")
    down_group = weyl_group(spec_n)
    if not _check_invariant(target, down_group):
        raise NotInvariant("target is not invariant downstairs")

    const = target.constant_term()
    core = target - MultivariatePolynomial.constant(target.nvars, const)
    if core.is_zero():
        return MultivariatePolynomial.constant(nv_up, const)

    stab = stabilizer(spec_k, n)
    G = reynolds(core.embed(nv_up), stab)
    if G.restrict(nkeep) != core:
        raise ObstructionHit("averaging over the stabilizer changed the "
                             "restriction; the target is not reachable")

    H = MultivariatePolynomial.constant(nv_up, const)
    try:
        ps = rais_decompose(G, spec_k, n, d=d if d is not None
                            else core.degree())
    except NoSolutionAtDegree:
        ps = None
    if ps is not None:
        gens = chevalley_generators(spec_k)
        for p, g in zip(ps, gens):
            r = p.restrict(nkeep)
            if r.is_zero():
                continue
            q = _invariant_preimage(r, spec_k, spec_n)
            if q is None:
                raise ObstructionHit("coefficient %r has no invariant "
                                     "preimage" % r)
            H = H + q * g
    else:
        q = _invariant_preimage(core, spec_k, spec_n)
        if q is None:
            raise ObstructionHit("restricted average has no invariant preimage")
        H = H + q
    if H.restrict(nkeep) != target:
        raise AssertionError("lift failed to restrict to the target")
    return H
