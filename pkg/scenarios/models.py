"""
Models for persisted simulation runs and their event traces.

SimulationRun - One scenario execution (all replications) with its summary
SimulationEvent - Ordered engine events recorded during a run
"""

import uuid

from django.db import models


class SimulationRun(models.Model):
    """A scenario execution requested from the CLI or the API."""

    STATUS_CHOICES = [
        ('pending', 'Pending'),
        ('running', 'Running'),
        ('success', 'Success'),
        ('error', 'Error'),
    ]

    id = models.UUIDField(primary_key=True, default=uuid.uuid4, editable=False)
    created_at = models.DateTimeField(auto_now_add=True)

    scenario = models.CharField(max_length=100)
    seed = models.IntegerField(help_text='Base seed; replication i uses seed + i')
    iterations = models.PositiveIntegerField(default=1)
    config = models.JSONField(default=dict, help_text='Validated scenario configuration')

    status = models.CharField(max_length=20, choices=STATUS_CHOICES, default='pending')

    summary = models.JSONField(null=True, blank=True, help_text='Aggregated replication statistics')
    total_latency_ms = models.IntegerField(null=True, blank=True, help_text='Wall-clock execution time in ms')

    error_message = models.TextField(blank=True)
    error_code = models.CharField(max_length=40, blank=True)

    class Meta:
        ordering = ['-created_at']
        verbose_name = 'Simulation Run'
        verbose_name_plural = 'Simulation Runs'
        indexes = [
            models.Index(fields=['status'], name='scenarios_s_status_6d1f0e_idx'),
            models.Index(fields=['scenario', '-created_at'], name='scenarios_s_scenari_8a3c2b_idx'),
        ]

    def __str__(self):
        return f'{self.scenario} seed={self.seed} x{self.iterations} ({self.status})'


class SimulationEvent(models.Model):
    """One recorded engine event within a run."""

    STAGE_CHOICES = [
        ('flow_start', 'Flow Start'),
        ('crowd', 'Flash Crowd'),
        ('attach', 'Attach'),
        ('handover', 'Handover'),
        ('block', 'Block'),
        ('rejected_report', 'Rejected Report'),
        ('replication', 'Replication'),
        ('replications', 'Replications'),
    ]

    id = models.BigAutoField(primary_key=True)
    run = models.ForeignKey(SimulationRun, on_delete=models.CASCADE, related_name='events')
    seq = models.PositiveIntegerField(help_text='Sequence number for ordering')
    created_at = models.DateTimeField(auto_now_add=True)
    stage = models.CharField(max_length=30, choices=STAGE_CHOICES)
    sim_time = models.FloatField(null=True, blank=True, help_text='Simulated time in seconds')
    data = models.JSONField(help_text='Event payload')
    latency_ms = models.IntegerField(null=True, blank=True, help_text='Wall-clock time for span events')

    class Meta:
        ordering = ['seq']
        verbose_name = 'Simulation Event'
        verbose_name_plural = 'Simulation Events'
        indexes = [
            models.Index(fields=['run', 'seq'], name='scenarios_s_run_id_4b7e91_idx'),
            models.Index(fields=['stage'], name='scenarios_s_stage_2c9d5a_idx'),
        ]
        constraints = [
            models.UniqueConstraint(fields=['run', 'seq'], name='unique_simulation_run_seq'),
        ]

    def __str__(self):
        return f'{self.run_id} #{self.seq}: {self.stage}'
