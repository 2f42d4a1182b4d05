# Generated by Django 5.0.1 on 2026-10-18 09:12

import django.db.models.deletion
import uuid
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name='SimulationRun',
            fields=[
                ('id', models.UUIDField(default=uuid.uuid4, editable=False, primary_key=True, serialize=False)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('scenario', models.CharField(max_length=100)),
                ('seed', models.IntegerField(help_text='Base seed; replication i uses seed + i')),
                ('iterations', models.PositiveIntegerField(default=1)),
                ('config', models.JSONField(default=dict, help_text='Validated scenario configuration')),
                ('status', models.CharField(choices=[('pending', 'Pending'), ('running', 'Running'), ('success', 'Success'), ('error', 'Error')], default='pending', max_length=20)),
                ('summary', models.JSONField(blank=True, help_text='Aggregated replication statistics', null=True)),
                ('total_latency_ms', models.IntegerField(blank=True, help_text='Wall-clock execution time in ms', null=True)),
                ('error_message', models.TextField(blank=True)),
                ('error_code', models.CharField(blank=True, max_length=40)),
            ],
            options={
                'verbose_name': 'Simulation Run',
                'verbose_name_plural': 'Simulation Runs',
                'ordering': ['-created_at'],
                'indexes': [
                    models.Index(fields=['status'], name='scenarios_s_status_6d1f0e_idx'),
                    models.Index(fields=['scenario', '-created_at'], name='scenarios_s_scenari_8a3c2b_idx'),
                ],
            },
        ),
        migrations.CreateModel(
            name='SimulationEvent',
            fields=[
                ('id', models.BigAutoField(primary_key=True, serialize=False)),
                ('seq', models.PositiveIntegerField(help_text='Sequence number for ordering')),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('stage', models.CharField(choices=[('flow_start', 'Flow Start'), ('crowd', 'Flash Crowd'), ('attach', 'Attach'), ('handover', 'Handover'), ('block', 'Block'), ('rejected_report', 'Rejected Report'), ('replication', 'Replication'), ('replications', 'Replications')], max_length=30)),
                ('sim_time', models.FloatField(blank=True, help_text='Simulated time in seconds', null=True)),
                ('data', models.JSONField(help_text='Event payload')),
                ('latency_ms', models.IntegerField(blank=True, help_text='Wall-clock time for span events', null=True)),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='events', to='scenarios.simulationrun')),
            ],
            options={
                'verbose_name': 'Simulation Event',
                'verbose_name_plural': 'Simulation Events',
                'ordering': ['seq'],
                'indexes': [
                    models.Index(fields=['run', 'seq'], name='scenarios_s_run_id_4b7e91_idx'),
                    models.Index(fields=['stage'], name='scenarios_s_stage_2c9d5a_idx'),
                ],
                'constraints': [
                    models.UniqueConstraint(fields=('run', 'seq'), name='unique_simulation_run_seq'),
                ],
            },
        ),
    ]
