from django.contrib import admin
from .models import RunManifest


@admin.register(RunManifest)
class RunManifestAdmin(admin.ModelAdmin):
    list_display = ("command", "seed", "version", "created_at")
    list_filter = ("command",)
    readonly_fields = ("created_at",)
