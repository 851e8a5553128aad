"""Factoring integers through quadratic residues harvested from forms.

Every residue collected here is a small number r with x^2 = r (mod M) for
some known or deducible x.  Three harvests produce them: leading coefficients
along the period of (1, floor(sqrt(kM)), ...), smooth values of k*x^2 - M near
sqrt(M/k), and outer coefficients of reduced powers of a class of determinant
-kM.  Squarefree kernels of the residues are combined over GF(2) to shrink
the generating set, then every odd prime p <= limit with no kernel a
non-residue mod p survives the sieve; true prime factors of M always survive,
so trial division over the survivors (and recursion on the quotient) finishes
the job.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from .composition import class_multiples
from .forms import QuadraticForm
from .numtheory import (
    DomainError,
    Factorization,
    full_factor,
    iroot,
    is_prime,
    is_smooth,
    jacobi,
    primes_upto,
    sqrt_mod,
    squarefree_part,
    trial_factor,
)
from .reduction import neighbor


@dataclass(frozen=True)
class WitnessedResidue:
    """Quadratic residue raw mod some M, its squarefree kernel, and a root."""

    raw: int
    kernel: int
    witness: int | None
    provenance: str


def witnessed_residue(raw: int, modulus: int, witness: int | None, provenance: str) -> WitnessedResidue:
    kernel, _ = squarefree_part(raw)
    if witness is not None:
        witness %= modulus
        if (witness * witness - raw) % modulus:
            raise DomainError(f"witness {witness} does not square to {raw} mod {modulus}")
    return WitnessedResidue(raw, kernel, witness, provenance)


@dataclass(frozen=True)
class FactorBaseVector:
    """GF(2) exponent vector of a kernel over a fixed odd-prime base plus sign."""

    residue: WitnessedResidue
    base: tuple[int, ...]
    bits: tuple[int, ...]
    sign_bit: int

    @classmethod
    def from_residue(cls, residue: WitnessedResidue, base: tuple[int, ...]) -> "FactorBaseVector":
        k = abs(residue.kernel)
        bits = []
        for p in base:
            if k % p == 0:
                bits.append(1)
                k //= p
            else:
                bits.append(0)
        if k != 1:
            raise DomainError(f"kernel {residue.kernel} has a prime outside the base")
        return cls(residue, base, tuple(bits), 1 if residue.kernel < 0 else 0)

    @property
    def is_zero(self) -> bool:
        return self.sign_bit == 0 and not any(self.bits)


@dataclass(frozen=True)
class HarvestResult:
    """Residues gathered by one pipeline stage plus factors found on the way."""

    residues: tuple[WitnessedResidue, ...]
    factors: tuple[int, ...] = ()


@dataclass(frozen=True)
class FactorConfig:
    trial_bound: int = 100
    multipliers: tuple[int, ...] = (1, 2, 3)
    period_steps: int = 20
    window: int = 50
    smooth_bound: int = 100
    use_class_multiples: bool = False
    class_seed_lead: int = 3
    class_count: int = 10
    sieve_limit: int | None = None

    def __post_init__(self) -> None:
        if self.trial_bound < 2:
            raise DomainError("trial_bound must be at least 2")
        if not self.multipliers or any(k < 1 for k in self.multipliers):
            raise DomainError("multipliers must be positive")
        if self.period_steps < 1:
            raise DomainError("period_steps must be at least 1")
        if self.smooth_bound < 2:
            raise DomainError("smooth_bound must be at least 2")
        if self.class_count < 1:
            raise DomainError("class_count must be at least 1")


def seed_form(m: int, k: int = 1) -> QuadraticForm:
    """Principal-cycle seed (1, s, s^2 - kM) with s = isqrt(kM); det = kM."""
    if m < 1 or k < 1:
        raise DomainError("m and k must be positive")
    s = isqrt(k * m)
    if s * s == k * m:
        raise DomainError(f"{k}*{m} is a perfect square; take gcd({s}, {m}) instead")
    return QuadraticForm(1, s, s * s - k * m)


def harvest_from_period(m: int, k: int = 1, steps: int = 20) -> HarvestResult:
    """Leading coefficients along the period of the seed form, with witnesses.

    Successive leads a_j satisfy a_j*a_{j+1} = b_j^2 - kM, so the chained
    witness w_{j+1} = b_j / w_j (mod M) squares to a_{j+1}; a shared factor
    with M aborts the walk early and is returned through the factor channel.
    """
    current = seed_form(m, k)
    residues: list[WitnessedResidue] = []
    factors: list[int] = []
    w = 1
    for step in range(1, steps + 1):
        b_prev = current.b
        current = neighbor(current)
        g = gcd(current.a, m)
        if g > 1:
            if g < m:
                factors.append(g)
            break
        w = b_prev * pow(w, -1, m) % m
        residues.append(
            witnessed_residue(current.a, m, w, f"period-form(k={k}, step={step})")
        )
    return HarvestResult(tuple(residues), tuple(factors))


def harvest_square_representations(
    m: int,
    multipliers: tuple[int, ...] = (1, 2, 3),
    window: int = 50,
    smooth_bound: int = 100,
) -> HarvestResult:
    """Smooth values k*(k*x^2 - M) for x near sqrt(M/k); witness is k*x."""
    residues: list[WitnessedResidue] = []
    factors: list[int] = []
    for k in multipliers:
        center = isqrt(m // k)
        for x in range(max(1, center - window), center + window + 1):
            r = k * x * x - m
            if r == 0:
                g = gcd(x, m)
                if 1 < g < m:
                    factors.append(g)
                continue
            v = k * r
            if not is_smooth(v, smooth_bound):
                continue
            residues.append(
                witnessed_residue(v, m, k * x, f"square-representation(k={k}, x={x})")
            )
    return HarvestResult(tuple(residues), tuple(factors))


def harvest_from_class_multiples(
    m: int,
    seed: QuadraticForm,
    n_max: int = 10,
    smooth_bound: int = 100,
) -> HarvestResult:
    """Smooth outer coefficients of the reduced powers of a class of det -kM.

    Even powers represent their own outer coefficients, so a' and c' are
    residues directly; for odd powers the represented values are seed.a * a'
    and seed.a * c'.  No square roots are tracked for these.
    """
    d = seed.determinant
    if d >= 0 or (-d) % m:
        raise DomainError("seed determinant must be -kM for some positive k")
    residues: list[WitnessedResidue] = []
    for n, rep in class_multiples(seed, n_max):
        scale = 1 if n % 2 == 0 else seed.a
        for value, which in ((rep.a, "a"), (rep.c, "c")):
            v = scale * value
            if is_smooth(v, smooth_bound):
                residues.append(
                    witnessed_residue(v, m, None, f"class-multiple(n={n}, {which})")
                )
    return HarvestResult(tuple(residues), ())


@lru_cache(maxsize=4096)
def _prime_support(kernel: int) -> frozenset[int]:
    if kernel == 0:
        return frozenset()
    f = full_factor(abs(kernel))
    return frozenset(p for p, _ in f.factors)


def _multiply(
    r1: WitnessedResidue, r2: WitnessedResidue, m: int, factors: list[int]
) -> WitnessedResidue:
    # kernels are squarefree, so shared primes are exactly gcd(|k1|, |k2|)
    shared = gcd(abs(r1.kernel), abs(r2.kernel))
    raw = r1.kernel * r2.kernel // (shared * shared)
    witness = None
    if r1.witness is not None and r2.witness is not None:
        # witness_i squares to raw_i = kernel_i * s_i^2; divide out s_i and
        # the shared primes to get a root of the squarefree product
        s = isqrt(r1.raw // r1.kernel) * isqrt(r2.raw // r2.kernel) * shared
        try:
            witness = r1.witness * r2.witness * pow(s, -1, m) % m
        except ValueError:
            g = gcd(s, m)
            if 1 < g < m:
                factors.append(g)
    if witness is not None and (witness * witness - raw) % m:
        raise DomainError(f"witness {witness} does not square to {raw} mod {m}")
    return WitnessedResidue(raw, raw, witness, f"combination({r1.kernel} * {r2.kernel})")


def combine(residues: list[WitnessedResidue] | tuple[WitnessedResidue, ...], m: int) -> HarvestResult:
    """Gauss-Jordan over GF(2) on kernel exponent vectors, plus shared-prime products.

    Returns an independent generating set for the kernels (unit kernels are
    dropped) together with products of input pairs sharing a prime; any factor
    of m uncovered while dividing witnesses comes back in the factor channel.
    """
    factors: list[int] = []
    pool = list(residues)
    base = tuple(sorted({p for r in pool for p in _prime_support(r.kernel)}, reverse=True))
    columns = len(base) + 1  # one column per prime, descending, then the sign

    def mask_of(r: WitnessedResidue) -> int:
        v = FactorBaseVector.from_residue(r, base)
        bits = 0
        for i, bit in enumerate(v.bits):
            bits |= bit << i
        return bits | (v.sign_bit << len(base))

    work = [(mask_of(r), r) for r in pool]
    used: set[int] = set()
    for col in range(columns):
        bit = 1 << col
        pivot = next((i for i in range(len(work)) if i not in used and work[i][0] & bit), None)
        if pivot is None:
            continue
        used.add(pivot)
        for i in range(len(work)):
            if i != pivot and work[i][0] & bit:
                work[i] = (
                    work[i][0] ^ work[pivot][0],
                    _multiply(work[i][1], work[pivot][1], m, factors),
                )
    out: list[WitnessedResidue] = []
    seen: set[int] = set()
    for _, r in work:
        if r.kernel != 1 and r.kernel not in seen:
            seen.add(r.kernel)
            out.append(r)
    # pairwise products that eliminate shared primes and genuinely shrink
    for i in range(len(pool)):
        for j in range(i + 1, len(pool)):
            k1, k2 = pool[i].kernel, pool[j].kernel
            shared = gcd(abs(k1), abs(k2))
            if shared == 1:
                continue
            kp = k1 * k2 // (shared * shared)
            if kp == 1 or abs(kp) >= max(abs(k1), abs(k2)) or kp in seen:
                continue
            seen.add(kp)
            out.append(_multiply(pool[i], pool[j], m, factors))
    return HarvestResult(tuple(out), tuple(factors))


def sieve_candidates(
    residues: list[WitnessedResidue] | tuple[WitnessedResidue, ...], limit: int
) -> tuple[int, ...]:
    """Odd primes p <= limit for which no kernel is a non-residue mod p."""
    if not residues:
        raise DomainError("an empty residue pool would pass every prime")
    kernels: list[int] = []
    for r in residues:
        if abs(r.kernel) != 1 and r.kernel not in kernels:
            kernels.append(r.kernel)
    out = []
    for p in primes_upto(limit):
        if p == 2:
            continue
        if all(jacobi(k, p) != -1 for k in kernels if k % p):
            out.append(p)
    return tuple(out)


@dataclass(frozen=True)
class FactorReport:
    input: int
    factorization: Factorization
    residues: tuple[WitnessedResidue, ...]
    survivors: tuple[int, ...]
    pseudo_survivors: tuple[int, ...]
    notes: tuple[str, ...] = ()

    @property
    def complete(self) -> bool:
        return self.factorization.complete

    @property
    def status(self) -> str:
        return "complete" if self.complete else "partial"

    def to_json(self) -> dict:
        return {
            "input": self.input,
            "status": self.status,
            "residues": [
                {
                    "raw": r.raw,
                    "kernel": r.kernel,
                    "witness": r.witness,
                    "provenance": r.provenance,
                }
                for r in self.residues
            ],
            "survivors": list(self.survivors),
            "pseudo_survivors": list(self.pseudo_survivors),
            "factors": [[p, e] for p, e in self.factorization.factors],
            "cofactor": self.factorization.cofactor,
        }


def _class_seed(m: int, lead: int) -> QuadraticForm | None:
    """Form (lead, b, c) of determinant -m with the smallest b >= 0, if any."""
    roots = sqrt_mod(-m % lead, lead)
    if not roots:
        return None
    b = roots[0]
    return QuadraticForm(lead, b, (b * b + m) // lead)


def factor(m: int, config: FactorConfig | None = None) -> FactorReport:
    """Factor a positive integer via the quadratic-residue pipeline.

    Small primes are stripped by trial division; prime and perfect-power
    leftovers are dispatched directly.  Anything else goes through harvest,
    combine, and sieve, and the quotient by any survivor that divides is
    recursed on.  If no survivor divides, the report comes back partial with
    the untouched cofactor and the sieve survivors on display.
    """
    if m < 1:
        raise DomainError("m must be positive")
    cfg = config or FactorConfig()
    found: dict[int, int] = {}
    residues: list[WitnessedResidue] = []
    survivors: list[int] = []
    pseudo: list[int] = []
    notes: list[str] = []
    leftover = 1

    def add(p: int, e: int) -> None:
        found[p] = found.get(p, 0) + e

    def crack(n: int, mult: int) -> None:
        f = trial_factor(n, cfg.trial_bound)
        for p, e in f.factors:
            add(p, e * mult)
        r = f.cofactor
        if r == 1:
            return
        if is_prime(r):
            add(r, mult)
            return
        for e in range(2, r.bit_length() + 1):
            root, exact = iroot(r, e)
            if root < 2:
                break
            if exact:
                crack(root, mult * e)
                return
        crack_hard(r, mult)

    def crack_hard(r: int, mult: int) -> None:
        nonlocal leftover
        pool: list[WitnessedResidue] = []

        def drain(result: HarvestResult) -> int | None:
            pool.extend(result.residues)
            residues.extend(result.residues)
            return result.factors[0] if result.factors else None

        for k in cfg.multipliers:
            s = isqrt(k * r)
            if s * s == k * r:
                g = gcd(s, r)
                if 1 < g < r:
                    crack(g, mult)
                    crack(r // g, mult)
                    return
                notes.append(f"multiplier {k} skipped: {k}*{r} is a perfect square")
                continue
            g = drain(harvest_from_period(r, k, cfg.period_steps))
            if g is not None:
                crack(g, mult)
                crack(r // g, mult)
                return
        g = drain(
            harvest_square_representations(r, cfg.multipliers, cfg.window, cfg.smooth_bound)
        )
        if g is not None:
            crack(g, mult)
            crack(r // g, mult)
            return
        if cfg.use_class_multiples:
            seed = _class_seed(r, cfg.class_seed_lead)
            if seed is None:
                notes.append(f"no class seed with lead {cfg.class_seed_lead} for {r}")
            else:
                drain(harvest_from_class_multiples(r, seed, cfg.class_count, cfg.smooth_bound))
        if not pool:
            notes.append(f"no residues harvested for {r}")
            leftover *= r**mult
            return
        g = drain(combine(pool[:], r))
        if g is not None:
            crack(g, mult)
            crack(r // g, mult)
            return
        limit = cfg.sieve_limit if cfg.sieve_limit is not None else isqrt(r)
        passed = sieve_candidates(pool, limit)
        survivors.extend(passed)
        rem = r
        for p in passed:
            e = 0
            while rem % p == 0:
                rem //= p
                e += 1
            if e:
                add(p, e * mult)
            else:
                pseudo.append(p)
        if rem == r:
            notes.append(f"no sieve survivor divides {r}")
            leftover *= r**mult
            return
        if rem > 1:
            crack(rem, mult)

    if m > 1:
        crack(m, 1)
    factorization = Factorization(1, tuple(sorted(found.items())), leftover)
    return FactorReport(
        m, factorization, tuple(residues), tuple(survivors), tuple(pseudo), tuple(notes)
    )
