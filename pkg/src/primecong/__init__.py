"""Exact verification of congruences modulo prime powers.

Residue arithmetic in Z/p^c, exact big-rational oracles, Bernoulli
numbers, fractional binomial coefficient streams, a catalog of verifiable
congruence statements, and scanners for conjectured valuation bounds.
"""

from .bernoulli import (
    BernoulliCache,
    CacheBoundExceeded,
    IrregularCache,
    IrregularReduction,
    bernoulli_exact,
    bernoulli_mod,
    load_cache,
    save_cache,
    vsc_denominator,
)
from .congruences import (
    CATALOG,
    CongruenceReport,
    NotApplicable,
    ParamPolicy,
    PrimeContext,
    Statement,
    cross_consistency,
    falsified,
    modular_exact_match,
    verify,
    verify_prime,
    verify_range,
)
from .fracbinom import (
    BinomStream,
    FamilyTerm,
    InvalidFamily,
    binom_exact,
    binom_stream,
    conjecture_term,
    family_term,
    rational_binom_units,
)
from .modring import (
    BigRational,
    DenominatorNotCoprime,
    ModulusMismatch,
    NotDivisible,
    NotInvertible,
    PrecisionExhausted,
    PrimePowerModulus,
    Residue,
    Valuation,
    exact_div_by_p,
    from_rational,
    rational_valuation,
    valuation_of,
)
from .primes import is_prime, prime_range, primes_up_to
from .scanners import (
    FAMILY_MINUS,
    FAMILY_PLUS,
    ScanConfig,
    ScanRecord,
    classify_composite,
    scan_conj_1_1,
    scan_conj_1_2,
    search_composites,
)
from .seqsums import (
    HarmonicTable,
    SymTable,
    elem_sym,
    elem_sym_exact,
    harmonic,
    harmonic_exact,
    inv_power_sum,
    mixed_sum_2_8,
)

__version__ = "0.1.0"
