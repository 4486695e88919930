"""Interaction range from bounding box size.

A box counts as within range when either dimension reaches its threshold
(tall trunks saturate height, wide pools saturate width). The near band
gives the policy an "approach slowly" signal before that."""

import logging

from .records import RangeConfig,RangeEstimate

logger = logging.getLogger('vistawise.perception.range')

def estimate_range(w_e: float, h_e: float, cfg: RangeConfig = None) -> RangeEstimate:
    """Classify a bounding box into within/near/beyond.

    Args:
        w_e (float): box width in pixels, >= 0
        h_e (float): box height in pixels, >= 0
        cfg (RangeConfig, optional): thresholds. Defaults to k_w=110, k_h=275.

    Returns:
        RangeEstimate: the range class
    """

    cfg = cfg or RangeConfig()

    if w_e >= cfg.k_w or h_e >= cfg.k_h:
        return RangeEstimate.WITHIN

    if w_e >= cfg.near_band * cfg.k_w or h_e >= cfg.near_band * cfg.k_h:
        return RangeEstimate.NEAR

    return RangeEstimate.BEYOND
