#include <stdio.h>
#include <stdlib.h>
#include <string.h>
#include "config.h"

#define KEY_MAX 32

void cfg_default(struct config *c)
{
    c->port = 7000;
    c->timeout = 30;
    c->verbose = 0;
    c->max_clients = 64;
    strcpy(c->host, "localhost");
}

void cfg_usage(const char *prog)
{
    printf("usage: %s [options]\n", prog);
    printf("\n");
    printf("options:\n");
    printf("  -h, --help           show this help and exit\n");
    printf("  -v, --verbose        print more diagnostics\n");
    printf("  -p, --port PORT      listen on PORT (default 7000)\n");
    printf("  -H, --host HOST      bind to HOST (default localhost)\n");
    printf("  -t, --timeout SECS   idle timeout in seconds\n");
    printf("  -m, --max N          accept at most N clients\n");
    printf("  -c, --config FILE    read settings from FILE\n");
    printf("  -d, --dump           print effective settings\n");
    printf("\n");
    printf("settings file format:\n");
    printf("  key = value          one setting per line\n");
    printf("  # comment            ignored\n");
    printf("\n");
    printf("keys: port, host, timeout, verbose, max_clients\n");
}

int cfg_set_int(int *dst, const char *value, int lo, int hi)
{
    char *end;
    long v = strtol(value, &end, 10);

    if (*end != '\0' || v < lo || v > hi)
        return -1;
    *dst = (int)v;
    return 0;
}

int cfg_parse_line(struct config *c, const char *line)
{
    char key[KEY_MAX];
    const char *eq = strchr(line, '=');
    const char *val;
    size_t klen;

    if (line[0] == '#' || eq == NULL)
        return 0;
    klen = eq - line;
    while (klen > 0 && line[klen - 1] == ' ')
        klen--;
    memcpy(key, line, klen);
    key[klen] = '\0';
    val = eq + 1;
    while (*val == ' ')
        val++;
    if (strcmp(key, "port") == 0)
        return cfg_set_int(&c->port, val, 1, 65535);
    if (strcmp(key, "timeout") == 0)
        return cfg_set_int(&c->timeout, val, 0, 3600);
    if (strcmp(key, "host") == 0) {
        strncpy(c->host, val, sizeof(c->host) - 1);
        return 0;
    }
    return -1;
}

const char *cfg_lookup(const struct config *c, const char *key)
{
    if (strcmp(key, "host") == 0)
        return c->host;
    return NULL;
}

int cfg_load(struct config *c, const char *path)
{
    char line[256];
    FILE *fp = fopen(path, "r");
    int lineno = 0, bad = 0;

    if (fp == NULL)
        return -1;
    while (fgets(line, sizeof(line), fp)) {
        lineno++;
        line[strcspn(line, "\n")] = '\0';
        if (cfg_parse_line(c, line) < 0) {
            fprintf(stderr, "%s:%d: bad setting\n", path, lineno);
            bad++;
        }
    }
    fclose(fp);
    return bad ? -1 : 0;
}

void cfg_dump(const struct config *c)
{
    printf("port = %d\n", c->port);
    printf("host = %s\n", c->host);
    printf("timeout = %d\n", c->timeout);
    printf("verbose = %d\n", c->verbose);
    printf("max_clients = %d\n", c->max_clients);
}
