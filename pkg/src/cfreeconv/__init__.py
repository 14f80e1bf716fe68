"""Exact-arithmetic moment and cumulant machinery for multiplicative
convolutions of probability measures on the unit circle, covering the
one-state (free, boolean) and two-state worlds, with partition-level
oracles for every identity."""

from .errors import (
    ArgumentError,
    CfreeError,
    DomainError,
    ResourceLimitError,
    UnsupportedDomainError,
)
from .partitions import (
    NCLinkedPartition,
    NCPartition,
    SetPartition,
    enumerate_nc,
    enumerate_nc_0,
    enumerate_nc_s,
    enumerate_ncl,
    kreweras,
    nc_join,
    ncl_classify,
    partition_from_json,
)
from .series import (
    ComplexRational,
    TruncatedSeries,
    boxed_convolution,
    cf_weight,
)
from .cumulants import (
    OneStateData,
    TwoStateData,
    cfree_cumulants_from_moments,
    free_cumulants_from_moments,
    moments_from_free_cumulants,
    phi_moments_from_cfree_cumulants,
    product_phi_cumulants,
    product_psi_cumulants,
)
from .transforms import (
    TransformBundle,
    b_series,
    cr_transform,
    ct_transform,
    eta,
    moments_from_t,
    phi_moments_from_ct,
    r_transform,
    sigma_series,
    t_transform,
)
from .measures import (
    CircleMeasure,
    IdGenerator,
    MeasurePair,
    boolean_convolve,
    center_array,
    cfree_multiplicative_convolve,
    free_multiplicative_convolve,
    herglotz_exp,
    idiv_boolean_measure,
    idiv_free_measure,
    limit_experiment,
    semigroup_pair,
    toeplitz_psd_check,
)

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "CfreeError",
    "CircleMeasure",
    "ComplexRational",
    "DomainError",
    "IdGenerator",
    "MeasurePair",
    "NCLinkedPartition",
    "NCPartition",
    "OneStateData",
    "ResourceLimitError",
    "SetPartition",
    "TransformBundle",
    "TruncatedSeries",
    "TwoStateData",
    "UnsupportedDomainError",
    "b_series",
    "boolean_convolve",
    "boxed_convolution",
    "center_array",
    "cf_weight",
    "cfree_cumulants_from_moments",
    "cfree_multiplicative_convolve",
    "cr_transform",
    "ct_transform",
    "enumerate_nc",
    "enumerate_nc_0",
    "enumerate_nc_s",
    "enumerate_ncl",
    "eta",
    "free_cumulants_from_moments",
    "free_multiplicative_convolve",
    "herglotz_exp",
    "idiv_boolean_measure",
    "idiv_free_measure",
    "kreweras",
    "limit_experiment",
    "moments_from_free_cumulants",
    "moments_from_t",
    "nc_join",
    "ncl_classify",
    "partition_from_json",
    "phi_moments_from_cfree_cumulants",
    "phi_moments_from_ct",
    "product_phi_cumulants",
    "product_psi_cumulants",
    "r_transform",
    "semigroup_pair",
    "sigma_series",
    "t_transform",
    "toeplitz_psd_check",
]
