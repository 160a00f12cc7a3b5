"""
One Monte-Carlo realization of the coded RSMA downlink.

Per realization l the group messages W_m are drawn, split into the common
share W_{c,m} and the private part W_{p,m}, encoded stream by stream,
superposed through the precoders, sent over the true channel with AWGN, and
decoded at every user by the two-stage receiver.
"""

from __future__ import annotations

import logging
from typing import List, NamedTuple, Optional, Sequence

import numpy as np

from app.core.channel.noise import awgn
from app.core.models.amc import McsAssignment
from app.core.models.campaign import RealizationRecord
from app.core.models.coding import PolarSettings
from app.core.models.precoder import PrecoderSet
from app.core.phy import common_share, sic_receive, stream_code, transmit_stream
from app.core.polar import PolarCode
from app.core.seeding import SeedPurpose, derive_seed, rng_for
from app.core.sysmodel import SystemModelError, superpose

logger = logging.getLogger(__name__)


class GroupMessages(NamedTuple):
    common: np.ndarray  # W_c = W_{c,1} ‖ … ‖ W_{c,M}
    private: List[np.ndarray]  # W_{p,m}
    groups: List[np.ndarray]  # W_m = W_{c,m} ‖ W_{p,m}


class LinkPlan:
    """
    Everything a realization needs besides the channel: precoders, MCS and the codes.

    Codes are listed [common, private_1, …, private_M]; disabled streams have None.
    """

    def __init__(
        self,
        precoders: PrecoderSet,
        mcs: McsAssignment,
        settings: PolarSettings,
        group_map: Sequence[int],
        noise_variance: float,
        max_log: bool = False,
    ):
        if precoders.num_groups != mcs.num_groups:
            raise SystemModelError("precoders and MCS disagree on the number of groups")
        self.precoders = precoders
        self.mcs = mcs
        self.group_map = list(group_map)
        self.noise_variance = float(noise_variance)
        self.max_log = max_log
        self.streams = [mcs.common, *mcs.private]
        self.codes: List[Optional[PolarCode]] = [
            stream_code(s, settings) if s.enabled else None for s in self.streams
        ]

    @property
    def num_users(self) -> int:
        return len(self.group_map)

    def __str__(self) -> str:
        return f"<LinkPlan {self.mcs.summary} K={self.num_users}>"


def draw_messages(mcs: McsAssignment, rng: np.random.Generator) -> GroupMessages:
    groups = [rng.integers(0, 2, mcs.group_payload(m), dtype=np.uint8) for m in range(mcs.num_groups)]
    shares = mcs.common_payload_split
    common = np.concatenate([w[: shares[m]] for m, w in enumerate(groups)]).astype(np.uint8)
    private = [w[shares[m] :] for m, w in enumerate(groups)]
    return GroupMessages(common=common, private=private, groups=groups)


def interleaver_seeds(master: int, index: int, num_streams: int) -> List[int]:
    return [derive_seed(master, SeedPurpose.INTERLEAVER, index, s) for s in range(num_streams)]


def transmit(
    plan: LinkPlan, messages: GroupMessages, seeds: Sequence[int]
) -> np.ndarray:
    """Transmit vectors x for the S channel uses (N_t × S); disabled streams send zeros."""
    length = plan.mcs.stream_length
    symbols = np.zeros((len(plan.streams), length), dtype=np.complex128)
    payloads = [messages.common, *messages.private]
    for index, (mcs, code) in enumerate(zip(plan.streams, plan.codes)):
        if code is None:
            continue
        symbols[index] = transmit_stream(payloads[index], code, mcs, seeds[index]).symbols
    return superpose(plan.precoders, symbols)


def run_realization(
    index: int, channel: np.ndarray, plan: LinkPlan, master: int
) -> RealizationRecord:
    """
    Send one frame per stream over the true channel and decode it at every user.

    A user's common share counts when the common CRC passes and the share
    matches; the private part counts when its CRC passes and it matches.
    """
    channel = np.asarray(channel, dtype=np.complex128)
    if channel.shape != (plan.precoders.num_tx_antennas, plan.num_users):
        raise SystemModelError(f"channel of shape {channel.shape} does not match the link")

    messages = draw_messages(plan.mcs, rng_for(master, SeedPurpose.MESSAGE, index))
    seeds = interleaver_seeds(master, index, len(plan.streams))
    x = transmit(plan, messages, seeds)
    y = awgn(channel.conj().T @ x, plan.noise_variance, derive_seed(master, SeedPurpose.NOISE, index))

    recovered, common_flags, private_flags, block_ok = [], [], [], []
    for k, group in enumerate(plan.group_map):
        result = sic_receive(
            y[k],
            channel[:, k],
            plan.precoders,
            plan.mcs,
            plan.codes,
            group,
            plan.noise_variance,
            seeds,
            plan.max_log,
        )
        share = common_share(messages.common, plan.mcs, group)
        common_ok = share.size == 0 or (
            result.common_crc and np.array_equal(common_share(result.common_message, plan.mcs, group), share)
        )
        private = messages.private[group]
        private_ok = private.size == 0 or (
            result.private_crc and np.array_equal(result.private_message, private)
        )
        recovered.append(int(share.size * common_ok + private.size * private_ok))
        common_flags.append(result.common_crc)
        private_flags.append(result.private_crc)
        block_ok.append(bool(common_ok and private_ok))

    return RealizationRecord(
        index=index,
        recovered_bits=recovered,
        common_crc=common_flags,
        private_crc=private_flags,
        block_ok=block_ok,
        channel_uses=plan.mcs.stream_length,
    )
