from .joint import (
    MAX_JOINT_STATES,
    enumerate_joint,
    oracle_evidence_prob,
    oracle_posterior,
    surviving_mask,
    oracle_surviving_mass,
)
