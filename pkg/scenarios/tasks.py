"""
Celery tasks for the scenarios app.

Replications of one scenario are independent; run_replications fans them out
as a group of run_replication tasks and joins on the results.
"""

import logging

from celery import shared_task

logger = logging.getLogger(__name__)


@shared_task
def run_replication(config_data: dict, seed: int) -> dict:
    """
    Run one replication and return its RunResult as a plain dict.

    Args:
        config_data: ScenarioConfig.to_dict() output
        seed: Replication seed
    """
    from scenarios.config import validate_config
    from scenarios.runner import run

    config = validate_config(config_data)
    logger.info(f"Replication task: scenario {config.name} seed {seed}")
    return run(config, seed).to_dict()
