"""
Django admin for persisted simulation runs and their event traces.
"""

import json

from django.contrib import admin
from django.utils.html import format_html

from .models import SimulationEvent, SimulationRun


class SimulationEventInline(admin.TabularInline):
    model = SimulationEvent
    extra = 0
    readonly_fields = ['seq', 'stage', 'sim_time', 'data_preview', 'latency_ms']
    fields = ['seq', 'stage', 'sim_time', 'data_preview', 'latency_ms']
    ordering = ['seq']

    def has_add_permission(self, request, obj=None):
        return False

    def data_preview(self, obj):
        data_str = json.dumps(obj.data)
        return data_str[:120] + '...' if len(data_str) > 120 else data_str
    data_preview.short_description = 'Data'


@admin.register(SimulationRun)
class SimulationRunAdmin(admin.ModelAdmin):
    list_display = ['id_short', 'scenario', 'seed', 'iterations', 'status_badge', 'total_latency_ms', 'created_at']
    list_filter = ['status', 'scenario', 'created_at']
    search_fields = ['scenario']
    readonly_fields = [
        'id', 'created_at', 'scenario', 'seed', 'iterations', 'status', 'total_latency_ms',
        'error_code', 'error_message', 'config_display', 'summary_display',
    ]
    exclude = ['config', 'summary']
    inlines = [SimulationEventInline]

    def id_short(self, obj):
        return str(obj.id)[:8]
    id_short.short_description = 'ID'

    def status_badge(self, obj):
        colors = {
            'pending': '#ffc107',
            'running': '#17a2b8',
            'success': '#28a745',
            'error': '#dc3545',
        }
        return format_html(
            '<span style="background:{}; color:white; padding:2px 8px; border-radius:4px;">{}</span>',
            colors.get(obj.status, '#6c757d'), obj.status
        )
    status_badge.short_description = 'Status'

    def config_display(self, obj):
        return format_html('<pre style="max-height:300px; overflow:auto;">{}</pre>', json.dumps(obj.config, indent=2))
    config_display.short_description = 'Config'

    def summary_display(self, obj):
        if not obj.summary:
            return '-'
        return format_html('<pre style="max-height:400px; overflow:auto;">{}</pre>', json.dumps(obj.summary, indent=2))
    summary_display.short_description = 'Summary'


@admin.register(SimulationEvent)
class SimulationEventAdmin(admin.ModelAdmin):
    list_display = ['run', 'seq', 'stage', 'sim_time', 'latency_ms']
    list_filter = ['stage']
    readonly_fields = ['run', 'seq', 'stage', 'sim_time', 'data', 'latency_ms', 'created_at']
