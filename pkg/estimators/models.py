from django.db import models
from django.utils import timezone


def default_created_at():
    return timezone.now()


class RunManifest(models.Model):
    """One recorded command run: enough to replay it byte for byte."""
    command = models.CharField(max_length=64)
    parameters = models.JSONField(default=dict)
    seed = models.BigIntegerField(blank=True, null=True)
    version = models.CharField(max_length=32)
    outputs = models.JSONField(default=list)
    created_at = models.DateTimeField(default=default_created_at)

    class Meta:
        ordering = ["-created_at"]

    def __str__(self):
        return f"{self.command} {self.parameters}"
