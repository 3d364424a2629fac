import pytest

from app.exceptions import InvalidParametersError
from app.models.claim import ClaimId, ClaimShape, ClaimVariant, Driver
from app.repositories.base_repository import BaseRepository
from app.repositories.claim_repository import ClaimRepository
from app.schemas.params import WrightParams
from app.services.bounds_catalog import BoundsCatalogService, bound_value, enumerate_claims

REMARK = WrightParams(lam=1.0, mu=2.5)


@pytest.fixture
def catalog():
    return BoundsCatalogService()


def by_key(claims):
    return {(c.id, c.variant): c for c in claims}


class TestBoundValue:
    def test_theorem_bounds_at_remark_parameters(self):
        ratio = bound_value(ClaimId.T21_RATIO, REMARK)
        inverse = bound_value(ClaimId.T21_INVERSE, REMARK)
        assert ratio.bound == pytest.approx(0.5)
        assert inverse.bound == pytest.approx(2.0 / 3.0)
        assert ratio.valid and inverse.valid

    def test_hypothesis_is_strict(self):
        claim = bound_value(ClaimId.T22_RATIO, WrightParams(lam=1.0, mu=3.0))
        assert claim.valid is False
        assert claim.bound == pytest.approx(0.0)

    def test_star_radius(self):
        assert bound_value(ClaimId.STAR_RADIUS_FIRST, WrightParams(lam=0.0, mu=3.0)).bound == pytest.approx(0.5)
        assert bound_value(ClaimId.STAR_RADIUS_SECOND, WrightParams(lam=1.0, mu=1.0)).bound == pytest.approx(0.6)

    def test_singular_formula_gives_no_bound(self):
        claim = bound_value(ClaimId.L1I, WrightParams(lam=1.0, mu=0.5))
        assert claim.bound is None
        assert claim.valid is False

    def test_invalid_bound_still_reported(self):
        claim = bound_value(ClaimId.T22_RATIO, WrightParams(lam=1.0, mu=2.0), n=1)
        assert claim.bound == pytest.approx(-1.0)
        assert claim.valid is False
        assert claim.n == 1

    def test_lemma_two_variants(self):
        params = WrightParams(lam=1.0, mu=1.0)
        assert bound_value(ClaimId.L2I, params).bound == pytest.approx(4.0 / 3.0)
        assert bound_value(ClaimId.L2I, params, variant=ClaimVariant.PROOF).bound == pytest.approx(5.0 / 3.0)
        assert bound_value(ClaimId.L2II, params).bound == pytest.approx(5.0 / 3.0)
        assert bound_value(ClaimId.L2II, params, variant=ClaimVariant.PROOF).bound == pytest.approx(3.0)

    def test_missing_variant(self):
        with pytest.raises(InvalidParametersError):
            bound_value(ClaimId.T21_RATIO, REMARK, variant=ClaimVariant.PROOF)

    def test_remark_claims_fixed_to_their_parameters(self):
        claim = bound_value(ClaimId.R24_RATIO, REMARK, n=4)
        assert claim.valid and claim.n == 0
        assert claim.bound == pytest.approx(2.0 / 3.0)
        assert bound_value(ClaimId.R24_INVERSE, WrightParams(lam=1.0, mu=2.6)).valid is False


class TestEnumerateClaims:
    def test_every_row_in_table_order(self):
        claims = enumerate_claims(REMARK)
        assert len(claims) == 21
        assert claims[0].id is ClaimId.L1I
        assert [c.variant for c in claims[3:7]] == [
            ClaimVariant.STATEMENT, ClaimVariant.PROOF, ClaimVariant.STATEMENT, ClaimVariant.PROOF,
        ]
        assert claims[-1].id is ClaimId.STAR_RADIUS_SECOND

    def test_validity_at_remark_parameters(self):
        claims = by_key(enumerate_claims(REMARK))
        assert claims[(ClaimId.T21_RATIO, ClaimVariant.STATEMENT)].valid
        assert claims[(ClaimId.T23_RATIO, ClaimVariant.STATEMENT)].valid
        assert not claims[(ClaimId.T22_RATIO, ClaimVariant.STATEMENT)].valid
        assert not claims[(ClaimId.T22_INVERSE, ClaimVariant.STATEMENT)].valid

    def test_large_mu_validates_first_kind(self, catalog):
        claims = enumerate_claims(WrightParams(lam=0.0, mu=10.0), n=3)
        for row, claim in zip(catalog.repository.get_multi(), claims):
            if row.driver is Driver.MU and row.fixed_params is None:
                assert claim.valid, claim.id
            assert claim.n == (0 if row.fixed_n == 0 else 3)

    def test_small_lambda_plus_mu_invalidates_second_kind(self, catalog):
        claims = enumerate_claims(WrightParams(lam=-0.5, mu=0.6), n=1)
        for row, claim in zip(catalog.repository.get_multi(), claims):
            if row.driver is Driver.LAMBDA_PLUS_MU:
                assert not claim.valid, claim.id

    def test_ratio_bounds_lie_in_unit_interval(self, catalog):
        for row in catalog.repository.get_multi(shape=ClaimShape.RATIO):
            for params in catalog.sample_params(row, [0.0, 1.0]):
                claim = catalog.instantiate(row, params)
                assert claim.valid
                assert 0.0 < claim.bound < 1.0, (row.id, params)

    def test_bounds_tend_to_one(self, catalog):
        far = WrightParams(lam=1.0, mu=1e8)
        for claim in catalog.enumerate_claims(far):
            if claim.id in (ClaimId.R24_RATIO, ClaimId.R24_INVERSE):
                continue
            assert claim.bound == pytest.approx(1.0, abs=1e-6), claim.id

    def test_claim_list(self, catalog):
        listing = catalog.claim_list(REMARK, 2)
        assert listing.total == 21 == len(listing.claims)


class TestRepository:
    def test_ratio_pairs_swap_sides(self):
        repository = ClaimRepository()
        ratio = repository.get_claim(ClaimId.T31_RATIO)
        inverse = repository.get_claim(ClaimId.T31_INVERSE)
        assert ratio.numerator == inverse.denominator
        assert ratio.denominator == inverse.numerator
        assert ratio.denominator.partial and not ratio.numerator.partial

    def test_variants(self):
        repository = ClaimRepository()
        assert [r.variant for r in repository.variants(ClaimId.L2II)] == [ClaimVariant.STATEMENT, ClaimVariant.PROOF]
        assert len(repository.variants(ClaimId.T21_RATIO)) == 1
        assert repository.count(shape=ClaimShape.MODULUS) == 7
        assert repository.count(shape=ClaimShape.RADIUS) == 2

    def test_duplicate_keys_rejected(self):
        with pytest.raises(ValueError):
            BaseRepository([1, 2, 1], key=lambda row: row)

    def test_paging(self):
        repository = ClaimRepository()
        page = repository.get_multi(skip=5, limit=3)
        assert [r.key for r in page] == [r.key for r in repository.get_multi()[5:8]]

    def test_sample_params_for_second_kind(self, catalog):
        row = catalog.definition(ClaimId.T31_RATIO)
        points = catalog.sample_params(row, [2.0, 0.0])
        assert points[0] == WrightParams(lam=0.0, mu=1.2)
        assert all(p.lambda_plus_mu in (1.2, 2.0, 4.0) for p in points)
        assert len(points) == 6

    def test_registry_document(self, catalog):
        registry = catalog.registry_document()
        assert len(registry) == 21
        first = registry[0]
        assert first["id"] == "l1i" and first["denominator"] is None
        remark = next(entry for entry in registry if entry["id"] == "r24-inverse")
        assert remark["numerator"] == "0.75*norm-first_n"
        assert remark["denominator"] == "norm-first"
